"""Linear-algebraic list decoding of FRS and multiplicity codes.

Interpolate ``Q(X, Y_1..Y_m) = A_0(X) + sum_k A_k(X) Y_k`` through the received
data, then solve ``Q(X, f(X), f(aX), ..., f(a^(m-1) X)) = 0`` (FRS) or
``Q(X, f, f^(1), ..., f^(m-1)) = 0`` (multiplicity, Hasse derivatives) for
every ``f`` of degree ``<= d``.  The solutions form an affine space which
contains each message whose codeword agrees with the input in more than
``(D + d) / (s - m + 1)`` columns.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import floor

import numpy as np

from .algebra import (
    Polynomial,
    binom_table,
    first_kernel_vector,
    matmul_mod,
    powers,
    rank,
    solve_affine,
)
from .codes import CodeParams, Codeword, FrsParams, MultParams, RecoverySets
from .errors import InvariantViolation, ParameterError


@dataclass(frozen=True)
class Threshold:
    N: int
    D: int
    t_min: int
    max_errors: int


@dataclass(eq=False)
class CandidateSpace:
    """``{offset + sum_i c_i basis_i : c_i in GF(q)}``, or the empty set."""

    params: CodeParams
    m: int
    D: int
    offset: Polynomial | None
    basis: list[Polynomial] = dc_field(default_factory=list)

    @property
    def is_empty(self) -> bool:
        return self.offset is None

    @property
    def dimension(self) -> int:
        """Number of basis vectors; -1 for the empty space."""
        return -1 if self.offset is None else len(self.basis)

    def offset_vector(self) -> np.ndarray:
        return self.params.message_vector(self.offset)

    def basis_matrix(self) -> np.ndarray:
        """``(r, d+1)`` coefficient matrix of the basis."""
        k = self.params.d + 1
        if not self.basis:
            return np.zeros((0, k), dtype=np.int64)
        return np.array([b.padded(k) for b in self.basis], dtype=np.int64)

    def offset_codeword(self) -> np.ndarray:
        return self.params.encode_vector(self.offset_vector())

    def basis_codewords(self) -> np.ndarray:
        """``(r, n, s)`` codewords of the direction space."""
        return self.params.encode_vector(self.basis_matrix())

    def member(self, coords) -> Polynomial:
        v = self.offset_vector()
        coords = np.asarray(coords, dtype=np.int64).reshape(-1)
        if coords.size:
            v = (v + matmul_mod(coords, self.basis_matrix(), self.params.q)) % self.params.q
        return Polynomial(self.params.field, v)

    def coordinates_of(self, f: Polynomial) -> np.ndarray | None:
        """Coordinates of ``f`` relative to (offset, basis), or None if not a member."""
        if self.offset is None or f.degree > self.params.d:
            return None
        p = self.params.q
        target = (self.params.message_vector(f) - self.offset_vector()) % p
        B = self.basis_matrix().T
        if B.shape[1] == 0:
            return np.zeros(0, dtype=np.int64) if not target.any() else None
        sol = solve_affine(B, target, p)
        return None if sol is None else sol.particular

    def contains(self, f: Polynomial) -> bool:
        return self.coordinates_of(f) is not None

    def check_independent(self) -> bool:
        return rank(self.basis_matrix(), self.params.q) == len(self.basis)

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "D": self.D,
            "offset": None if self.offset is None else list(self.offset.padded(self.params.d + 1)),
            "basis": [list(b.padded(self.params.d + 1)) for b in self.basis],
        }

    @classmethod
    def from_json(cls, params: CodeParams, obj: dict) -> CandidateSpace:
        try:
            off = obj["offset"]
            return cls(params, int(obj["m"]), int(obj["D"]),
                       None if off is None else Polynomial(params.field, off),
                       [Polynomial(params.field, b) for b in obj["basis"]])
        except (KeyError, TypeError) as exc:
            raise ParameterError(f"malformed candidate-space object: {exc}") from None


def _check_m(params: CodeParams, m: int) -> None:
    if isinstance(m, bool) or not isinstance(m, (int, np.integer)) or not 1 <= m <= params.s:
        raise ParameterError(f"decoding parameter m must satisfy 1 <= m <= s={params.s}, got {m!r}")


def interpolation_degree(N: int, m: int, d: int) -> int:
    """Smallest D >= 0 with (m+1)(D+1) + d >= N + 1 unknowns-over-constraints."""
    need = N + 1 - d  # (m+1)(D+1) >= need
    return max(0, -(-need // (m + 1)) - 1)


def radius_threshold(params: CodeParams, m: int, ell: int = 1) -> Threshold:
    _check_m(params, m)
    if ell < 1:
        raise ParameterError("ell must be >= 1")
    windows = params.s - m + 1
    N = params.n * ell * windows
    D = interpolation_degree(N, m, params.d)
    t_min = (D + params.d) // windows + 1
    max_errors = params.n - t_min
    if ell == 1:
        from .bounds import frs_radius

        rho = frs_radius(m, params.s, params.rate)
        if rho > 0 and max_errors < floor(rho * params.n) - 1:
            raise InvariantViolation(
                f"agreement threshold {t_min} falls short of the guaranteed radius {rho}")
    return Threshold(N, D, t_min, max_errors)


def _split(Q: np.ndarray, m: int, D: int, d: int) -> tuple[np.ndarray, np.ndarray]:
    A0 = Q[:D + d + 1]
    A = Q[D + d + 1:].reshape(m, D + 1)
    return A0, A


def _interpolate(C: np.ndarray, p: int) -> np.ndarray:
    Q = first_kernel_vector(C, p)
    if Q is None:
        raise InvariantViolation("interpolation system has a trivial kernel; unknowns must exceed constraints")
    return Q


def _finish(params: CodeParams, m: int, D: int, E: np.ndarray, rhs: np.ndarray) -> CandidateSpace:
    sol = solve_affine(E, rhs, params.q)
    if sol is None:
        return CandidateSpace(params, m, D, None, [])
    space = CandidateSpace(
        params, m, D,
        Polynomial(params.field, sol.particular),
        [Polynomial(params.field, v) for v in sol.kernel_basis],
    )
    if space.dimension > m - 1:
        raise InvariantViolation(f"candidate space has dimension {space.dimension} > m-1 = {m - 1}")
    return space


def frs_interpolation_matrix(params: FrsParams, S: RecoverySets, m: int, D: int) -> np.ndarray:
    p, s, d = params.q, params.s, params.d
    blocks = []
    for i, candidates in enumerate(S.sets):
        xs = params.eval_points[i, :s - m + 1]
        X = powers(xs, D + d + 1, p)  # (windows, D+d+1)
        for v in candidates:
            v = np.asarray(v, dtype=np.int64)
            row = [X]
            for k in range(1, m + 1):
                row.append(X[:, :D + 1] * v[k - 1:k - 1 + len(xs), None] % p)
            blocks.append(np.hstack(row))
    return np.vstack(blocks)


def frs_list_recover(params: FrsParams, S: RecoverySets, m: int) -> CandidateSpace:
    _check_m(params, m)
    S.check_against(params)
    p, s, d = params.q, params.s, params.d
    N = sum(len(c) for c in S.sets) * (s - m + 1)
    D = interpolation_degree(N, m, d)
    Q = _interpolate(frs_interpolation_matrix(params, S, m, D), p)
    A0, A = _split(Q, m, D, d)

    # coefficient u of sum_k A_k(X) f(alpha^(k-1) X):
    #   sum_t f_t * sum_k alpha^((k-1) t) A_k[u - t]
    apow = powers([pow(params.field.alpha, t, p) for t in range(d + 1)], m, p)  # (d+1, m)
    W = matmul_mod(apow, A, p)  # (d+1, D+1)
    E = np.zeros((D + d + 1, d + 1), dtype=np.int64)
    for t in range(d + 1):
        E[t:t + D + 1, t] = W[t]
    return _finish(params, m, D, E, (-A0) % p)


def frs_list_decode(params: FrsParams, y: Codeword, m: int) -> CandidateSpace:
    y.check_against(params)
    return frs_list_recover(params, RecoverySets.from_codeword(y), m)


def mult_interpolation_matrix(params: MultParams, y: Codeword, m: int, D: int) -> np.ndarray:
    p, s, d, n = params.q, params.s, params.d, params.n
    w = s - m + 1
    width = D + d + 1
    B = binom_table(max(width, s), p)
    P = powers(params.points, width, p)  # (n, width)
    # H[u][:, e] = u-th Hasse derivative of X^e at each point = C(e, u) a^(e-u)
    H = []
    for u in range(w):
        h = np.zeros((n, width), dtype=np.int64)
        h[:, u:] = P[:, :width - u] * B[u:width, u] % p
        H.append(h)
    Y = y.array
    rows = np.zeros((n, w, width + m * (D + 1)), dtype=np.int64)
    for j in range(w):
        rows[:, j, :width] = H[j]
        for k in range(1, m + 1):
            acc = np.zeros((n, D + 1), dtype=np.int64)
            for v in range(j + 1):
                coef = B[k - 1 + v, v] * Y[:, k - 1 + v] % p
                acc = (acc + coef[:, None] * H[j - v][:, :D + 1]) % p
            start = width + (k - 1) * (D + 1)
            rows[:, j, start:start + D + 1] = acc
    return rows.reshape(n * w, -1)


def mult_list_decode(params: MultParams, y: Codeword, m: int) -> CandidateSpace:
    _check_m(params, m)
    y.check_against(params)
    p, s, d = params.q, params.s, params.d
    if p <= d:
        raise ParameterError(f"multiplicity decoding requires char q={p} > d={d}")
    N = params.n * (s - m + 1)
    D = interpolation_degree(N, m, d)
    Q = _interpolate(mult_interpolation_matrix(params, y, m, D), p)
    A0, A = _split(Q, m, D, d)

    # coefficient u of A_k(X) f^(k-1)(X) = sum_{t >= k-1} C(t, k-1) f_t A_k[u - t + k - 1]
    B = binom_table(max(d + 1, m), p)
    E = np.zeros((D + d + 1, d + 1), dtype=np.int64)
    for k in range(1, m + 1):
        for t in range(k - 1, d + 1):
            lo = t - k + 1
            E[lo:lo + D + 1, t] = (E[lo:lo + D + 1, t] + B[t, k - 1] * A[k - 1]) % p
    return _finish(params, m, D, E, (-A0) % p)


def list_decode(params: CodeParams, y: Codeword, m: int) -> CandidateSpace:
    if isinstance(params, FrsParams):
        return frs_list_decode(params, y, m)
    return mult_list_decode(params, y, m)


def guaranteed_agreement(space: CandidateSpace) -> Fraction:
    """Agreement (in columns) above which membership in ``space`` is guaranteed."""
    return Fraction(space.D + space.params.d, space.params.s - space.m + 1)
