"""List decoding and list recovery of folded Reed-Solomon and multiplicity codes."""
from .algebra import Field, FieldElement, Polynomial, hasse_derivative, solve_affine
from .codes import Codeword, FrsParams, MultParams, RecoverySets, corrupt, encode
from .decoder import CandidateSpace, frs_list_decode, frs_list_recover, list_decode, mult_list_decode
from .errors import BudgetExceeded, InvariantViolation, ParameterError
from .prune import PruneConfig, enumerate_list, prune

__version__ = "0.1.0"
