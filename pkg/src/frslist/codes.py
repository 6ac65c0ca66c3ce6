"""Folded Reed-Solomon and univariate multiplicity codes over GF(p).

A codeword is an ``n x s`` array: row ``i`` of the array is column ``i`` of
the code (one alphabet symbol in GF(p)^s).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence, Union

import numpy as np

from .algebra import Field, Polynomial, binom_table, matmul_mod, powers
from .errors import ParameterError


def _check_int(name: str, v, lo: int = 0) -> int:
    if isinstance(v, bool) or not isinstance(v, (int, np.integer)) or v < lo:
        raise ParameterError(f"{name} must be an integer >= {lo}, got {v!r}")
    return int(v)


class _CodeParams:
    field: Field
    s: int
    n: int
    d: int

    @property
    def q(self) -> int:
        return self.field.p

    @property
    def rate(self) -> Fraction:
        return Fraction(self.d + 1, self.s * self.n)

    @property
    def delta(self) -> Fraction:
        """Lower bound 1 - d/(sn) on the relative minimum distance."""
        return 1 - Fraction(self.d, self.s * self.n)

    @property
    def dim(self) -> int:
        return self.d + 1

    def check_message(self, message: Polynomial) -> None:
        if message.field.p != self.field.p:
            raise ParameterError("message polynomial is over a different field")
        if message.degree > self.d:
            raise ParameterError(f"message degree {message.degree} exceeds d={self.d}")

    def message_from_vector(self, v) -> Polynomial:
        return Polynomial(self.field, v)

    def message_vector(self, message: Polynomial) -> np.ndarray:
        return np.array(message.padded(self.d + 1), dtype=np.int64)

    def encode_vector(self, coeffs) -> np.ndarray:
        """Codeword(s) of coefficient vector(s) via the generator matrix.

        Accepts shape ``(d+1,)`` or ``(k, d+1)``; returns ``(n, s)`` or ``(k, n, s)``.
        """
        coeffs = np.asarray(coeffs, dtype=np.int64)
        flat = matmul_mod(coeffs, self.generator_matrix, self.q)
        return flat.reshape(coeffs.shape[:-1] + (self.n, self.s))

    def random_message(self, rng: np.random.Generator) -> Polynomial:
        return Polynomial(self.field, rng.integers(0, self.q, self.d + 1))


@dataclass(frozen=True, eq=False)
class FrsParams(_CodeParams):
    field: Field
    s: int
    n: int
    d: int

    def __post_init__(self):
        s = _check_int("s", self.s, 1)
        n = _check_int("n", self.n, 1)
        d = _check_int("d", self.d, 0)
        if n * s > self.field.p - 1:
            raise ParameterError(f"need n <= (q-1)/s, got n={n}, s={s}, q={self.field.p}")
        if d >= s * n:
            raise ParameterError(f"need d < s*n, got d={d}, s*n={s * n}")

    code = "frs"

    @cached_property
    def eval_points(self) -> np.ndarray:
        """``(n, s)`` array with entry ``[i, j] = alpha^(i*s + j)``."""
        e = np.arange(self.n * self.s)
        pts = np.array([pow(self.field.alpha, int(k), self.q) for k in e], dtype=np.int64)
        pts.setflags(write=False)
        return pts.reshape(self.n, self.s)

    @cached_property
    def generator_matrix(self) -> np.ndarray:
        G = powers(self.eval_points.reshape(-1), self.d + 1, self.q).T.copy()
        G.setflags(write=False)
        return G

    def to_json(self) -> dict:
        return {"code": "frs", "q": self.q, "s": self.s, "n": self.n, "d": self.d,
                "alpha": self.field.alpha}


@dataclass(frozen=True, eq=False)
class MultParams(_CodeParams):
    field: Field
    s: int
    n: int
    d: int
    points: tuple = None  # type: ignore[assignment]

    code = "mult"

    def __post_init__(self):
        s = _check_int("s", self.s, 1)
        n = _check_int("n", self.n, 1)
        d = _check_int("d", self.d, 0)
        p = self.field.p
        if n > p:
            raise ParameterError(f"need n <= q, got n={n}, q={p}")
        if d >= s * n:
            raise ParameterError(f"need d < s*n, got d={d}, s*n={s * n}")
        if self.points is None:
            if n > p - 1:
                raise ParameterError("default points alpha^i need n <= q-1; pass explicit points")
            pts = tuple(pow(self.field.alpha, i, p) for i in range(n))
        else:
            pts = tuple(int(a) % p for a in self.points)
            if len(pts) != n:
                raise ParameterError(f"expected {n} evaluation points, got {len(pts)}")
            if len(set(pts)) != n:
                raise ParameterError("evaluation points must be distinct")
        object.__setattr__(self, "points", pts)

    @cached_property
    def generator_matrix(self) -> np.ndarray:
        # row k, entry (i, j) = j-th Hasse derivative of X^k at a_i = C(k, j) a_i^(k-j)
        p, n, s, d = self.q, self.n, self.s, self.d
        B = binom_table(max(d + 1, s), p)
        P = powers(self.points, d + 1, p)
        G = np.zeros((d + 1, n, s), dtype=np.int64)
        for k in range(d + 1):
            for j in range(min(s, k + 1)):
                G[k, :, j] = B[k, j] * P[:, k - j] % p
        G = G.reshape(d + 1, n * s)
        G.setflags(write=False)
        return G

    def to_json(self) -> dict:
        return {"code": "mult", "q": self.q, "s": self.s, "n": self.n, "d": self.d,
                "alpha": self.field.alpha, "points": list(self.points)}


CodeParams = Union[FrsParams, MultParams]


def params_from_json(obj: dict) -> CodeParams:
    try:
        code = obj["code"]
        field = Field(int(obj["q"]), obj.get("alpha"))
        s, n, d = obj["s"], obj["n"], obj["d"]
    except (KeyError, TypeError) as exc:
        raise ParameterError(f"malformed params object: {exc}") from None
    if code == "frs":
        return FrsParams(field, s, n, d)
    if code == "mult":
        pts = obj.get("points")
        return MultParams(field, s, n, d, tuple(pts) if pts is not None else None)
    raise ParameterError(f"unknown code family {code!r}")


class Codeword:
    """``n`` columns of ``s`` field elements each."""

    __slots__ = ("array",)

    def __init__(self, columns):
        a = np.array(columns, dtype=np.int64)
        if a.ndim != 2:
            raise ParameterError("codeword must be a list of equal-length columns")
        a.setflags(write=False)
        self.array = a

    @property
    def n(self) -> int:
        return self.array.shape[0]

    @property
    def s(self) -> int:
        return self.array.shape[1]

    @property
    def columns(self) -> list[tuple[int, ...]]:
        return [tuple(int(x) for x in col) for col in self.array]

    def __eq__(self, other):
        if not isinstance(other, Codeword):
            return NotImplemented
        return self.array.shape == other.array.shape and bool(np.array_equal(self.array, other.array))

    def __repr__(self):
        return f"Codeword({self.columns})"

    def to_json(self) -> dict:
        return {"columns": [list(c) for c in self.columns]}

    @classmethod
    def from_json(cls, obj: dict) -> Codeword:
        try:
            return cls(obj["columns"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ParameterError(f"malformed word object: {exc}") from None

    def check_against(self, params: CodeParams) -> None:
        if self.array.shape != (params.n, params.s):
            raise ParameterError(f"word shape {self.array.shape} does not match (n, s)=({params.n}, {params.s})")
        if self.array.size and (self.array.min() < 0 or self.array.max() >= params.q):
            raise ParameterError("word entries must be residues in [0, q)")


class RecoverySets:
    """Per-column candidate lists ``S_1..S_n`` with ``1 <= |S_i| <= ell``."""

    def __init__(self, sets: Sequence[Sequence[Sequence[int]]], ell: int | None = None):
        norm = []
        s = None
        for i, S in enumerate(sets):
            cols = [tuple(int(x) for x in v) for v in S]
            if not cols:
                raise ParameterError(f"set {i} is empty")
            if len(set(cols)) != len(cols):
                raise ParameterError(f"set {i} contains duplicate columns")
            for v in cols:
                if s is None:
                    s = len(v)
                elif len(v) != s:
                    raise ParameterError("all candidate columns must have the same length s")
            norm.append(cols)
        biggest = max((len(S) for S in norm), default=1)
        if ell is None:
            ell = biggest
        elif biggest > ell:
            raise ParameterError(f"a set has {biggest} elements but ell={ell}")
        self.sets = norm
        self.ell = int(ell)
        self.s = s or 0
        self._members = [set(S) for S in norm]

    @classmethod
    def from_codeword(cls, y: Codeword) -> RecoverySets:
        return cls([[c] for c in y.columns], ell=1)

    @property
    def n(self) -> int:
        return len(self.sets)

    def __len__(self):
        return len(self.sets)

    def __getitem__(self, i):
        return self.sets[i]

    def contains(self, i: int, column) -> bool:
        return tuple(int(x) for x in column) in self._members[i]

    def agreement(self, x: Codeword) -> list[int]:
        if x.n != self.n or (self.s and x.s != self.s):
            raise ParameterError("codeword and recovery sets have different shapes")
        return [i for i, col in enumerate(x.columns) if col in self._members[i]]

    def check_against(self, params: CodeParams) -> None:
        if self.n != params.n or self.s != params.s:
            raise ParameterError(f"sets shape (n={self.n}, s={self.s}) does not match params")
        for S in self.sets:
            for v in S:
                if min(v) < 0 or max(v) >= params.q:
                    raise ParameterError("set entries must be residues in [0, q)")

    def to_json(self) -> dict:
        return {"ell": self.ell, "sets": [[list(v) for v in S] for S in self.sets]}

    @classmethod
    def from_json(cls, obj: dict) -> RecoverySets:
        try:
            return cls(obj["sets"], obj.get("ell"))
        except (KeyError, TypeError) as exc:
            raise ParameterError(f"malformed sets object: {exc}") from None


def _horner(coeffs: Sequence[int], x: np.ndarray, p: int) -> np.ndarray:
    acc = np.zeros_like(x)
    for c in reversed(coeffs):
        acc = (acc * x + c) % p
    return acc


def encode_frs(params: FrsParams, message: Polynomial) -> Codeword:
    params.check_message(message)
    return Codeword(_horner(message.coeffs, params.eval_points, params.q))


def encode_mult(params: MultParams, message: Polynomial) -> Codeword:
    params.check_message(message)
    pts = np.array(params.points, dtype=np.int64)
    out = np.empty((params.n, params.s), dtype=np.int64)
    for j in range(params.s):
        out[:, j] = _horner(message.hasse_derivative(j).coeffs, pts, params.q)
    return Codeword(out)


def encode(params: CodeParams, message: Polynomial) -> Codeword:
    if isinstance(params, FrsParams):
        return encode_frs(params, message)
    return encode_mult(params, message)


def dist_words(x: Codeword, y: Codeword) -> Fraction:
    if x.array.shape != y.array.shape:
        raise ParameterError(f"shape mismatch: {x.array.shape} vs {y.array.shape}")
    differ = int(np.any(x.array != y.array, axis=1).sum())
    return Fraction(differ, x.n)


def dist_sets(x: Codeword, S: RecoverySets) -> Fraction:
    return Fraction(x.n - len(S.agreement(x)), x.n)


def corrupt(c: Codeword, e: int, rng: np.random.Generator, q: int) -> Codeword:
    """Replace ``e`` distinct uniformly chosen columns by uniform different columns."""
    if not 0 <= e <= c.n:
        raise ParameterError(f"error count must lie in [0, n={c.n}], got {e}")
    out = c.array.copy()
    for i in rng.choice(c.n, size=e, replace=False):
        while True:
            col = rng.integers(0, q, c.s)
            if not np.array_equal(col, out[i]):
                break
        out[i] = col
    return Codeword(out)
