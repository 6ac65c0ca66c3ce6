"""Column statistics of subspaces of ``(GF(q)^s)^n``.

A subspace ``V`` is given by a basis array of shape ``(r, n, s)``: ``r``
independent codewords.  ``V_I`` is the projection onto the columns in ``I``
and ``H_i`` the vectors vanishing on column ``i``, so
``dim(V ∩ H_i) = r - dim(V_{i})``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import floor

import numpy as np

from .algebra import rank
from .bounds import fine_bound, iterative_beta, to_fraction
from .decoder import CandidateSpace
from .errors import BudgetExceeded, InvariantViolation, ParameterError


def _basis(V, p: int) -> np.ndarray:
    V = np.asarray(V, dtype=np.int64) % p
    if V.ndim != 3:
        raise ParameterError("basis must have shape (r, n, s)")
    if V.shape[0] and rank(V.reshape(V.shape[0], -1), p) != V.shape[0]:
        raise ParameterError("basis vectors are linearly dependent")
    return V


def projection_dim(V: np.ndarray, cols, p: int) -> int:
    cols = sorted(cols)
    if not cols or V.shape[0] == 0:
        return 0
    return rank(V[:, cols, :].reshape(V.shape[0], -1), p)


@dataclass(frozen=True)
class SubspaceStats:
    dims: tuple[int, ...]
    mean: Fraction
    bound: Fraction | None
    r0: int
    r: int

    @property
    def holds(self) -> bool | None:
        return None if self.bound is None else self.mean <= self.bound

    def to_json(self) -> dict:
        frac = lambda x: None if x is None else f"{x.numerator}/{x.denominator}"
        return {"dims": list(self.dims), "mean": frac(self.mean), "bound": frac(self.bound),
                "r0": self.r0, "r": self.r}


def column_kernel_dims(V, s: int, delta, p: int) -> SubspaceStats:
    """Per-column ``dim(V ∩ H_i)`` against the bound ``(1-delta)/(1-r/s) * r``.

    The bound is only defined for ``r < s``; otherwise it is ``None``.
    """
    V = _basis(V, p)
    r, n, s_ = V.shape
    if s_ != s:
        raise ParameterError(f"basis columns have length {s_}, expected {s}")
    delta = to_fraction(delta)
    dims = tuple(r - (rank(V[:, i, :], p) if r else 0) for i in range(n))
    r0 = sum(1 for x in dims if x == r)
    bound = (1 - delta) / (1 - Fraction(r, s)) * r if r < s else None
    return SubspaceStats(dims, Fraction(sum(dims), n), bound, r0, r)


def iterative_fraction_check(U, A, eps, delta, s: int, p: int) -> Fraction:
    """Share of ``i`` in ``A`` with ``dim(U ∩ H_i) <= floor(beta dim U)``; must be >= eps/4."""
    U = _basis(U, p)
    k, n, _ = U.shape
    eps, delta = to_fraction(eps), to_fraction(delta)
    A = sorted(set(int(i) for i in A))
    if k < 1:
        raise ParameterError("U must have dimension >= 1")
    if any(not 0 <= i < n for i in A):
        raise ParameterError("agreement set indexes out of range")
    if len(A) < (1 - delta + eps) * n:
        raise ParameterError(f"|A| = {len(A)} is below (1-delta+eps)n = {(1 - delta + eps) * n}")
    if Fraction(k, s) > eps / 4:
        raise ParameterError(f"dim(U)/s = {Fraction(k, s)} exceeds eps/4 = {eps / 4}")
    beta = iterative_beta(eps, delta, k, s)
    if not beta < 1:
        raise InvariantViolation(f"beta = {beta} is not below 1")
    threshold = floor(beta * k)
    good = sum(1 for i in A if k - rank(U[:, i, :], p) <= threshold)
    frac = Fraction(good, len(A))
    if frac < eps / 4:
        raise InvariantViolation(f"only {frac} of A has small intersection, below eps/4 = {eps / 4}")
    return frac


def closure(V: np.ndarray, cols, p: int) -> frozenset[int]:
    """All columns whose values are determined by the columns in ``cols``."""
    cols = frozenset(cols)
    base = projection_dim(V, cols, p)
    extra = [j for j in range(V.shape[1]) if j not in cols and projection_dim(V, cols | {j}, p) == base]
    return cols.union(extra)


def closure_size_bruteforce(V: np.ndarray, cols, p: int) -> int:
    """max |I| over supersets I of ``cols`` with dim(V_I) = dim(V_cols), by exhaustion."""
    cols = frozenset(cols)
    base = projection_dim(V, cols, p)
    rest = [j for j in range(V.shape[1]) if j not in cols]
    for size in range(len(rest), -1, -1):
        for extra in combinations(rest, size):
            if projection_dim(V, cols.union(extra), p) == base:
                return len(cols) + size
    raise AssertionError("unreachable: the empty extension always qualifies")


@dataclass(frozen=True)
class ValidVectorStats:
    r_seq: tuple[int, ...]
    R_seq: tuple[int, ...]
    # max closure over valid vectors whose projection is still not injective
    # (None when every valid vector of that length already has full dimension)
    R_deficient_seq: tuple[int | None, ...]
    counts: tuple[int, ...]


def valid_vector_stats(V, t_max: int | None = None, budget: int = 10**6, p: int = None) -> ValidVectorStats:
    """Exhaustive ``r_i`` / ``R_i`` for ``i = 0..t_max`` (default ``r - 1``)."""
    if p is None:
        raise ParameterError("field modulus p is required")
    V = _basis(V, p)
    r, n, _ = V.shape
    if t_max is None:
        t_max = max(r - 1, 0)
    if n ** t_max > budget:
        raise BudgetExceeded(f"n^t_max = {n}^{t_max} exceeds budget {budget}")

    dim_cache: dict[frozenset, int] = {}
    closure_cache: dict[frozenset, int] = {}

    def dim_of(cols: frozenset) -> int:
        if cols not in dim_cache:
            dim_cache[cols] = projection_dim(V, cols, p)
        return dim_cache[cols]

    def ubar(cols: frozenset) -> int:
        if cols not in closure_cache:
            base = dim_of(cols)
            closure_cache[cols] = len(cols) + sum(
                1 for j in range(n) if j not in cols and dim_of(cols | {j}) == base)
        return closure_cache[cols]

    level = [frozenset()]  # valid vectors, keyed by their coordinate set with multiplicity collapsed
    level_counts = [1]
    r_seq, R_seq, Rdef_seq, counts = [], [], [], []
    for i in range(t_max + 1):
        sizes = [ubar(u) for u in level]
        deficient = [ubar(u) for u in level if dim_of(u) < r]
        r_seq.append(min(sizes))
        R_seq.append(max(sizes))
        Rdef_seq.append(max(deficient) if deficient else None)
        counts.append(sum(level_counts))
        if i == t_max:
            break
        nxt: dict[frozenset, int] = {}
        for u, mult in zip(level, level_counts):
            du = dim_of(u)
            for j in range(n):
                w = u | {j}
                if dim_of(w) >= min(r, du + 1):
                    nxt[w] = nxt.get(w, 0) + mult
        level = list(nxt)
        level_counts = [nxt[w] for w in level]
    return ValidVectorStats(tuple(r_seq), tuple(R_seq), tuple(Rdef_seq), tuple(counts))


def apply_fine_bound(stats: SubspaceStats, e: int, ell: int, delta) -> Fraction:
    return fine_bound(len(stats.dims), e, stats.r, ell, delta, stats.r0)


def space_stats(space: CandidateSpace) -> dict:
    """Column statistics of a decoder output in both linear readings.

    ``direction`` uses the span of the basis; ``span`` adds the offset's
    codeword (the smallest linear space containing the affine one).
    """
    params = space.params
    p = params.q
    B = space.basis_codewords()
    direction = column_kernel_dims(B, params.s, params.delta, p)
    W = np.concatenate([space.offset_codeword()[None], B]) % p
    if rank(W.reshape(W.shape[0], -1), p) < W.shape[0]:
        W = B
    span = column_kernel_dims(W, params.s, params.delta, p)
    return {"direction": direction, "span": span}
