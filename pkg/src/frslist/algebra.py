"""Exact arithmetic over a prime field GF(p).

Scalars are plain ``int`` residues in hot paths; :class:`FieldElement` is the
operator-friendly wrapper for callers that want one.  Matrices and vectors are
2-D / 1-D ``numpy.int64`` arrays with entries in ``[0, p)``.  Since ``p < 2**31``
every product of two residues fits in a signed 64-bit integer.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import ParameterError

MAX_MODULUS = 2**31


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13):
        if n % q == 0:
            return n == q
    # deterministic Miller-Rabin; these bases suffice for n < 3.4e14
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17):
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


def _check_modulus(p: int) -> None:
    if not isinstance(p, (int, np.integer)) or not 2 <= p < MAX_MODULUS or not is_prime(int(p)):
        raise ParameterError(f"modulus must be a prime below 2^31, got {p!r}")


def has_full_order(g: int, p: int) -> bool:
    g %= p
    if g == 0:
        return False
    return all(pow(g, (p - 1) // q, p) != 1 for q in prime_factors(p - 1))


@lru_cache(maxsize=None)
def _smallest_primitive(p: int) -> int:
    for g in range(1, p):
        if has_full_order(g, p):
            return g
    raise AssertionError("unreachable: every prime field has a primitive element")


def find_primitive(p: int) -> FieldElement:
    """Smallest generator of the multiplicative group of GF(p)."""
    _check_modulus(p)
    return Field(p)(_smallest_primitive(p))


@dataclass(frozen=True)
class Field:
    p: int
    alpha: int = None  # type: ignore[assignment]

    def __post_init__(self):
        _check_modulus(self.p)
        object.__setattr__(self, "p", int(self.p))
        if self.alpha is None:
            object.__setattr__(self, "alpha", _smallest_primitive(self.p))
        else:
            a = int(self.alpha) % self.p
            if not has_full_order(a, self.p):
                raise ParameterError(f"{self.alpha} is not a primitive element of GF({self.p})")
            object.__setattr__(self, "alpha", a)

    def __call__(self, value) -> FieldElement:
        return FieldElement(int(value) % self.p, self)

    @property
    def q(self) -> int:
        return self.p

    @property
    def characteristic(self) -> int:
        return self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.p})")
        return pow(a, -1, self.p)

    def alpha_pow(self, k: int) -> int:
        return pow(self.alpha, k, self.p)


@dataclass(frozen=True)
class FieldElement:
    value: int
    field: Field = dc_field(repr=False, compare=False)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field.p != self.field.p:
                raise ParameterError("operands live in different fields")
            return other.value
        if isinstance(other, (int, np.integer)):
            return int(other) % self.field.p
        return NotImplemented

    def _new(self, v: int) -> FieldElement:
        return FieldElement(v % self.field.p, self.field)

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(self.value - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(o - self.value)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(self.value * o)

    __rmul__ = __mul__

    def __neg__(self):
        return self._new(-self.value)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._new(self.value * self.field.inv(o))

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        return self._new(pow(self.value, k, self.field.p))

    def inv(self) -> FieldElement:
        return self._new(self.field.inv(self.value))

    def order(self) -> int:
        if self.value == 0:
            raise ZeroDivisionError("0 has no multiplicative order")
        p = self.field.p
        k = p - 1
        for q in prime_factors(p - 1):
            while k % q == 0 and pow(self.value, k // q, p) == 1:
                k //= q
        return k

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field.p == other.field.p and self.value == other.value
        if isinstance(other, (int, np.integer)):
            return self.value == int(other) % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.field.p))

    def __int__(self):
        return self.value

    __index__ = __int__

    def __repr__(self):
        return f"{self.value} (mod {self.field.p})"


def inv(a: FieldElement) -> FieldElement:
    return a.inv()


def binom_mod(n: int, k: int, p: int) -> int:
    if k < 0 or k > n:
        return 0
    return math.comb(n, k) % p


@lru_cache(maxsize=64)
def binom_table(size: int, p: int) -> np.ndarray:
    """``T[a, b] = C(a, b) mod p`` for ``0 <= a, b < size`` (Pascal's rule)."""
    T = np.zeros((size, size), dtype=np.int64)
    T[:, 0] = 1
    for a in range(1, size):
        T[a, 1:a + 1] = (T[a - 1, 1:a + 1] + T[a - 1, 0:a]) % p
    T.setflags(write=False)
    return T


class Polynomial:
    """Univariate polynomial over GF(p), coefficients lowest degree first.

    Always canonical: no trailing zeros, the zero polynomial has no
    coefficients and degree -1.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Iterable[int] = ()):
        p = field.p
        c = [int(x) % p for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.field = field
        self.coeffs = tuple(c)

    @classmethod
    def monomial(cls, field: Field, k: int, c: int = 1) -> Polynomial:
        return cls(field, [0] * k + [c])

    @property
    def coefficients(self) -> tuple[FieldElement, ...]:
        return tuple(self.field(c) for c in self.coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def padded(self, length: int) -> list[int]:
        if len(self.coeffs) > length:
            raise ParameterError(f"degree {self.degree} does not fit in {length} coefficients")
        return list(self.coeffs) + [0] * (length - len(self.coeffs))

    def __call__(self, x) -> int:
        return self.eval(x)

    def eval(self, x) -> int:
        p = self.field.p
        x = int(x) % p
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % p
        return acc

    def hasse_derivative(self, i: int) -> Polynomial:
        if i < 0:
            raise ParameterError("derivative order must be non-negative")
        p = self.field.p
        c = self.coeffs
        return Polynomial(self.field, [math.comb(j + i, i) % p * c[j + i] for j in range(len(c) - i)])

    def _other(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.field.p != self.field.p:
                raise ParameterError("polynomials over different fields")
            return other
        if isinstance(other, (int, np.integer, FieldElement)):
            return Polynomial(self.field, [int(other)])
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Polynomial(self.field, [x + (b[k] if k < len(b) else 0) for k, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._other(other)
        return o if o is NotImplemented else self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        return o if o is NotImplemented else o + (-self)

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        if not self.coeffs or not o.coeffs:
            return Polynomial(self.field)
        out = [0] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] += a * b
        return Polynomial(self.field, out)

    __rmul__ = __mul__

    def scale_argument(self, c: int) -> Polynomial:
        """P(c*X)."""
        p = self.field.p
        return Polynomial(self.field, [a * pow(c, k, p) for k, a in enumerate(self.coeffs)])

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.field.p == other.field.p and self.coeffs == other.coeffs
        if isinstance(other, (int, np.integer)):
            return self.coeffs == Polynomial(self.field, [other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.coeffs))

    def __lt__(self, other: Polynomial):
        return self.coeffs < other.coeffs

    def __repr__(self):
        if not self.coeffs:
            return "Polynomial(0)"
        terms = [f"{c}*X^{k}" if k else str(c) for k, c in enumerate(self.coeffs) if c]
        return f"Polynomial({' + '.join(terms)} mod {self.field.p})"


def hasse_derivative(P: Polynomial, i: int) -> Polynomial:
    return P.hasse_derivative(i)


def poly_eval(P: Polynomial, x) -> int:
    return P.eval(x)


# ---------------------------------------------------------------------------
# dense linear algebra


def as_matrix(A, p: int) -> np.ndarray:
    M = np.array(A, dtype=np.int64)
    if M.ndim == 1:
        M = M.reshape(1, -1) if M.size else M.reshape(0, 0)
    if M.ndim != 2:
        raise ParameterError("matrix must be 2-dimensional")
    return M % p


def matmul_mod(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    """``A @ B mod p`` without int64 overflow."""
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    inner = A.shape[-1]
    if inner == 0:
        return np.zeros(A.shape[:-1] + B.shape[1:], dtype=np.int64)
    if (p - 1) ** 2 * inner < 2**63:
        return (A @ B) % p
    # split the inner dimension into overflow-safe chunks
    step = max(1, (2**63 - 1) // ((p - 1) ** 2))
    out = np.zeros(A.shape[:-1] + B.shape[1:], dtype=np.int64)
    for k in range(0, inner, step):
        out = (out + (A[..., k:k + step] @ B[k:k + step]) % p) % p
    return out


def rref(M: np.ndarray, p: int, pivot_cols: int | None = None) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of a copy of ``M``.

    Pivots are searched only among the first ``pivot_cols`` columns (the
    remaining columns are carried along, e.g. an augmented right-hand side).
    Leftmost column first; within a column the first row with a nonzero entry.
    """
    M = np.array(M, dtype=np.int64) % p
    rows, cols = M.shape
    if pivot_cols is None:
        pivot_cols = cols
    # Entries are reduced lazily: only the pivot column and pivot row are
    # brought into [0, p) before each elimination step, so the bulk update is
    # a bare multiply-subtract.  |entry| grows by < (p-1)^2 per step.
    growth = (p - 1) ** 2
    bound = p - 1
    pivots: list[int] = []
    r = 0
    for c in range(pivot_cols):
        if r == rows:
            break
        col = M[:, c] % p
        M[:, c] = col
        nz = np.flatnonzero(col[r:])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            M[[r, k]] = M[[k, r]]
        piv_inv = pow(int(M[r, c]), -1, p)
        M[r, c:] = M[r, c:] % p * piv_inv % p
        f = M[:, c].copy()
        f[r] = 0
        if bound + growth >= 2**62:
            M %= p
            bound = p - 1
        M[:, c:] -= np.outer(f, M[r, c:])
        bound += growth
        pivots.append(c)
        r += 1
    M %= p
    return M, pivots


def rank(A, p: int) -> int:
    M = as_matrix(A, p)
    if M.size == 0:
        return 0
    return len(rref(M, p)[1])


class AffineSolution(NamedTuple):
    particular: np.ndarray
    kernel_basis: list[np.ndarray]

    @property
    def dimension(self) -> int:
        return len(self.kernel_basis)


def _kernel_from_rref(R: np.ndarray, pivots: list[int], ncols: int, p: int) -> list[np.ndarray]:
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = np.zeros(ncols, dtype=np.int64)
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = (-R[i, f]) % p
        basis.append(v)
    return basis


def solve_affine(A, b, p: int) -> AffineSolution | None:
    """All solutions of ``A x = b`` over GF(p).

    Returns ``particular + span(kernel_basis)`` (free variables set to zero in
    the particular solution), or ``None`` when the system is inconsistent.
    """
    b = np.asarray(b, dtype=np.int64).reshape(-1) % p
    A = np.asarray(A, dtype=np.int64)
    if A.ndim != 2:
        A = A.reshape(len(b), -1)
    rows, cols = A.shape
    if rows != len(b):
        raise ParameterError(f"matrix has {rows} rows but right-hand side has {len(b)} entries")
    aug = np.empty((rows, cols + 1), dtype=np.int64)
    aug[:, :cols] = A % p
    aug[:, cols] = b
    R, pivots = rref(aug, p, pivot_cols=cols)
    k = len(pivots)
    if np.any(R[k:, cols]):
        return None
    x = np.zeros(cols, dtype=np.int64)
    for i, c in enumerate(pivots):
        x[c] = R[i, cols]
    return AffineSolution(x, _kernel_from_rref(R, pivots, cols, p))


def kernel(A, p: int) -> list[np.ndarray]:
    A = np.asarray(A, dtype=np.int64)
    return solve_affine(A, np.zeros(A.shape[0], dtype=np.int64), p).kernel_basis


def first_kernel_vector(A, p: int) -> np.ndarray | None:
    """First kernel basis vector of ``A`` (by lowest free column), or None.

    Cheaper than :func:`kernel` when only one nonzero solution is needed.
    """
    R, pivots = rref(np.asarray(A, dtype=np.int64), p)
    cols = R.shape[1]
    pivset = set(pivots)
    free = next((c for c in range(cols) if c not in pivset), None)
    if free is None:
        return None
    v = np.zeros(cols, dtype=np.int64)
    v[free] = 1
    for i, c in enumerate(pivots):
        if c < free:
            v[c] = (-R[i, free]) % p
    return v


def powers(x: Sequence[int] | np.ndarray, count: int, p: int) -> np.ndarray:
    """``out[i, e] = x[i]**e mod p`` for ``e < count``."""
    x = np.asarray(x, dtype=np.int64).reshape(-1) % p
    out = np.empty((x.size, count), dtype=np.int64)
    if count == 0:
        return out
    out[:, 0] = 1
    for e in range(1, count):
        out[:, e] = out[:, e - 1] * x % p
    return out
