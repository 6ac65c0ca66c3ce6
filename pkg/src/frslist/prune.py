"""Extracting the actual list from a candidate space.

``prune`` is the randomized coordinate-sampling algorithm; ``enumerate_list``
is its exact (exhaustive) counterpart for small ``q^r``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import floor

import numpy as np

from .algebra import Polynomial, matmul_mod, rank, solve_affine
from .bounds import prune_iterations, to_fraction
from .codes import RecoverySets
from .decoder import CandidateSpace
from .errors import BudgetExceeded, ParameterError

DEFAULT_BUDGET = 2**24


@dataclass(frozen=True)
class PruneConfig:
    epsilon: Fraction
    eta: Fraction
    iterations: int | None = None
    seed: int = 0

    def __post_init__(self):
        eps, eta = to_fraction(self.epsilon), to_fraction(self.eta)
        if not 0 < eps < 1:
            raise ParameterError(f"epsilon must lie in (0, 1), got {eps}")
        if not 0 < eta < 1:
            raise ParameterError(f"eta must lie in (0, 1), got {eta}")
        if self.iterations is not None and self.iterations < 1:
            raise ParameterError("iterations must be >= 1")
        object.__setattr__(self, "epsilon", eps)
        object.__setattr__(self, "eta", eta)


def min_agreement(n: int, rho) -> int:
    """Smallest agreement count ``a`` with ``(n - a)/n <= rho``."""
    rho = to_fraction(rho)
    if rho < 0:
        raise ParameterError("radius must be non-negative")
    return n - min(n, floor(rho * n))


def _sort(polys) -> list[Polynomial]:
    return sorted(polys, key=lambda f: f.coeffs)


def _agreement_count(word: np.ndarray, S: RecoverySets) -> int:
    return sum(S.contains(i, col) for i, col in enumerate(word))


def _check_shapes(space: CandidateSpace, S: RecoverySets) -> None:
    if S.n != space.params.n:
        raise ParameterError(f"sets have length {S.n}, code length is {space.params.n}")
    S.check_against(space.params)


def prune(space: CandidateSpace, S: RecoverySets, rho, cfg: PruneConfig) -> list[Polynomial]:
    """Randomized list extraction over the affine candidate space.

    Iteration ``k`` draws its coordinates from
    ``numpy.random.default_rng([cfg.seed, k])``, so iterations are independent
    streams and the result does not depend on evaluation order.
    """
    rho = to_fraction(rho)
    if not 0 <= rho < 1:
        raise ParameterError(f"radius must lie in [0, 1), got {rho}")
    if space.is_empty:
        raise ParameterError("cannot prune the empty candidate space")
    _check_shapes(space, S)
    params = space.params
    p, n = params.q, params.n
    need = min_agreement(n, rho)
    r = space.dimension
    c0 = space.offset_codeword()

    if r == 0:
        return [space.offset] if _agreement_count(c0, S) >= need else []

    C = space.basis_codewords()  # (r, n, s)
    iterations = cfg.iterations or prune_iterations(cfg.epsilon, r, S.ell, cfg.eta)
    found: set[tuple[int, ...]] = set()
    for it in range(iterations):
        rng = np.random.default_rng([cfg.seed, it])
        coords = rng.integers(0, n, size=r)
        # lambda -> restriction of the codeword to the sampled columns
        M = np.vstack([C[:, i, :].T for i in coords])  # (r*s, r)
        if rank(M, p) < r:
            continue  # no choice of symbols pins down a unique codeword
        for ys in itertools.product(*(S[i] for i in coords)):
            rhs = np.concatenate([np.asarray(y, dtype=np.int64) - c0[i] for y, i in zip(ys, coords)]) % p
            sol = solve_affine(M, rhs, p)
            if sol is not None:
                found.add(tuple(int(x) for x in sol.particular))

    out = []
    for lam in found:
        word = (c0 + matmul_mod(np.array(lam, dtype=np.int64), C.reshape(r, -1), p).reshape(c0.shape)) % p
        if _agreement_count(word, S) >= need:
            out.append(space.member(lam))
    return _sort(out)


def _lambda_indices(points: np.ndarray, q: int) -> np.ndarray:
    """Mixed-radix index of coordinate vectors, first coordinate most significant."""
    idx = np.zeros(points.shape[0], dtype=np.int64)
    for j in range(points.shape[1]):
        idx = idx * q + points[:, j]
    return idx


def _grid(q: int, k: int) -> np.ndarray:
    if k == 0:
        return np.zeros((1, 0), dtype=np.int64)
    g = np.indices((q,) * k, dtype=np.int64).reshape(k, -1).T
    return g


def agreement_counts(space: CandidateSpace, S: RecoverySets) -> np.ndarray:
    """Agreement with ``S`` of every member of the space, indexed by coordinates.

    For each column ``i`` and candidate ``v`` in ``S_i`` the members whose
    codeword has ``v`` in column ``i`` form an affine subspace of coordinate
    space; every point of it gets one vote.  Distinct candidates in the same
    set give disjoint subspaces, so votes count agreeing columns exactly.
    """
    params = space.params
    p, n = params.q, params.n
    r = space.dimension
    c0 = space.offset_codeword()
    C = space.basis_codewords()
    counts = np.zeros(p ** r, dtype=np.int64)
    for i in range(n):
        M = C[:, i, :].T  # (s, r)
        for v in S[i]:
            rhs = (np.asarray(v, dtype=np.int64) - c0[i]) % p
            if r == 0:
                counts += int(not rhs.any())
                continue
            sol = solve_affine(M, rhs, p)
            if sol is None:
                continue
            k = sol.dimension
            if k == r:
                counts += 1
                continue
            mu = _grid(p, k)
            pts = sol.particular[None, :]
            if k:
                pts = (pts + matmul_mod(mu, np.array(sol.kernel_basis), p)) % p
            counts[_lambda_indices(pts, p)] += 1
    return counts


def enumerate_list(space: CandidateSpace, S: RecoverySets, rho, budget: int = DEFAULT_BUDGET) -> list[Polynomial]:
    """Exactly the members of ``space`` within distance ``rho`` of ``S``."""
    rho = to_fraction(rho)
    if not 0 <= rho <= 1:
        raise ParameterError(f"radius must lie in [0, 1], got {rho}")
    if space.is_empty:
        return []
    _check_shapes(space, S)
    p, r = space.params.q, space.dimension
    if p ** r > budget:
        raise BudgetExceeded(f"space has q^r = {p}^{r} members, budget is {budget}; use prune")
    counts = agreement_counts(space, S)
    hits = np.flatnonzero(counts >= min_agreement(space.params.n, rho))
    out = []
    for idx in hits:
        lam = []
        x = int(idx)
        for _ in range(r):
            lam.append(x % p)
            x //= p
        out.append(space.member(lam[::-1]))
    return _sort(out)


def messages_to_json(messages) -> dict:
    return {"messages": [list(f.coeffs) for f in messages]}
