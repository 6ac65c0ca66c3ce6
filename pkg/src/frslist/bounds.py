"""Closed-form decoding radii and list-size bounds.

Radii, conditions and rational-valued bounds are exact ``Fraction``s.
Bounds with real exponents are returned as floats.  Inputs may be ints,
Fractions, decimal strings ("0.2") or "num/den" strings; floats are read
through their shortest repr, so ``0.2`` means exactly 1/5.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, asdict
from fractions import Fraction

from .errors import ParameterError


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise ParameterError(f"not a number: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ParameterError(f"not a finite number: {x!r}")
        return Fraction(repr(x))
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise ParameterError(f"not a rational number: {x!r}") from None
    raise ParameterError(f"not a number: {x!r}")


def _rate(R) -> Fraction:
    R = to_fraction(R)
    if not 0 < R < 1:
        raise ParameterError(f"rate must lie in (0, 1), got {R}")
    return R


def frs_radius(m: int, s: int, R) -> Fraction:
    """Fraction of errors handled with decoding parameter ``m``: (m/(m+1))(1 - sR/(s-m+1))."""
    R = _rate(R)
    if not 1 <= m <= s:
        raise ParameterError(f"need 1 <= m <= s, got m={m}, s={s}")
    return Fraction(m, m + 1) * (1 - s * R / (s - m + 1))


def generalized_singleton(L: int, R) -> Fraction:
    if L < 1:
        raise ParameterError("list size must be >= 1")
    return Fraction(L, L + 1) * (1 - to_fraction(R))


def _eps(eps) -> Fraction:
    eps = to_fraction(eps)
    if not 0 < eps <= 1:
        raise ParameterError(f"epsilon must lie in (0, 1], got {eps}")
    return eps


def _pow_real(base: Fraction, exponent: Fraction | float) -> float:
    # exact when the exponent is an integer and the result is representable
    if isinstance(exponent, Fraction) and exponent.denominator == 1:
        v = base ** exponent.numerator
        try:
            return float(v)
        except OverflowError:
            return math.inf
    try:
        return math.exp(float(exponent) * math.log(base))
    except OverflowError:
        return math.inf


def list_bound_decoding(eps) -> float:
    """(1/eps)^(4/eps)."""
    return list_bound_recovery(1, eps)


def list_bound_recovery(ell: int, eps) -> float:
    """(ell/eps)^(4 ell/eps)."""
    if ell < 1:
        raise ParameterError("ell must be >= 1")
    eps = _eps(eps)
    return _pow_real(ell / eps, 4 * ell / eps)


@dataclass(frozen=True)
class ImprovedBound:
    beta: float
    exponent: float
    L: float
    r: Fraction


def list_bound_recovery_improved(ell: int, eps, delta, s: int) -> ImprovedBound:
    """Shorter-certificate bound (4l/(e(1-d+e)))^(1/e + log_{1/beta}(4l)), with r = 4l/e."""
    if ell < 1:
        raise ParameterError("ell must be >= 1")
    eps = _eps(eps)
    delta = to_fraction(delta)
    if not 0 < delta < 1:
        raise ParameterError(f"delta must lie in (0, 1), got {delta}")
    if not eps < delta:
        raise ParameterError(f"need epsilon < delta, got {eps} >= {delta}")
    if s < 1:
        raise ParameterError("s must be >= 1")
    r = 4 * ell / eps
    if r / s > eps / 4:
        raise ParameterError(f"need r/s <= epsilon/4 with r=4*ell/eps={r}; got r/s={r / s}")
    beta = (1 - delta) * (1 + eps / 2) / ((1 - delta + eps) * (1 - r / s))
    if not beta < 1:
        raise ParameterError(f"beta={beta} is not below 1")
    exponent = 1 / float(eps) + math.log(4 * ell) / math.log(1 / beta)
    base = 4 * ell / (eps * (1 - delta + eps))
    return ImprovedBound(float(beta), exponent, _pow_real(base, exponent), r)


def iterative_beta(eps, delta, r, s) -> Fraction:
    """(1-delta)(1+eps/2) / ((1-delta+eps)(1-r/s)), exactly."""
    eps, delta, r = to_fraction(eps), to_fraction(delta), to_fraction(r)
    if not r < s:
        raise ParameterError(f"need r < s, got r={r}, s={s}")
    return (1 - delta) * (1 + eps / 2) / ((1 - delta + eps) * (1 - r / s))


def list_bound_mult(ell: int, eps, d: int, p: int) -> float:
    """(ell/eps)^((4 ell/eps)(1 + d/p)), requires 4 ell/eps <= p."""
    if ell < 1:
        raise ParameterError("ell must be >= 1")
    eps = _eps(eps)
    if d < 0 or p < 2:
        raise ParameterError("need d >= 0 and a prime p")
    if 4 * ell / eps > p:
        raise ParameterError(f"need 4*ell/eps <= char = {p}, got {4 * ell / eps}")
    return _pow_real(ell / eps, 4 * ell / eps * (1 + Fraction(d, p)))


def cond2(m: int, s: int, R) -> bool:
    R = _rate(R)
    return Fraction(m - 1, m + 1) + Fraction((m - 1) * m, m + 1) * s * R / (s - m + 1) <= 1


@dataclass(frozen=True)
class FixedMBound:
    cond2_holds: bool
    L: Fraction
    # pre-limit forms: case 1 before s -> infinity, case 2 before the final relaxation
    case1_exact: Fraction | None
    case2_exact: Fraction | None


def fixed_m_bound(m: int, s: int, R) -> FixedMBound:
    if m < 3:
        raise ParameterError("fixed_m_bound needs m >= 3; use m2_bound for m = 2")
    if s < m:
        raise ParameterError(f"need s >= m, got s={s}, m={m}")
    R = _rate(R)
    holds = cond2(m, s, R)
    rho = frs_radius(m, s, R)
    case1 = case2 = None
    if holds:
        L = Fraction((m - 1) ** (m - 1)) * Fraction(m, m - 2) ** (m - 2)
        # (n-e)/(e-Rn) with e = n(1 - rho)
        if 1 - rho - R > 0:
            case1 = (m - 1) ** (m - 1) * (rho / ((m - 2) * (1 - rho - R))) ** (m - 2)
    else:
        L = Fraction((m + 1) ** (m - 1)) / ((1 + m * R) * (1 - R) ** (m - 2))
        c = 1 - Fraction(s - m * m + 1, s - m + 1) * R
        if c != 0:
            case2 = Fraction((m + 1) ** (m - 1)) / ((1 + Fraction(s * m, s - m + 1) * R) * c ** (m - 2))
    return FixedMBound(holds, L, case1, case2)


def m2_bound(s: int, R) -> Fraction:
    """3(1-R)/(1-R+2R/(s-1)), always below 3."""
    if s < 2:
        raise ParameterError("m2_bound needs s >= 2")
    R = _rate(R)
    v = 3 * (1 - R) / (1 - R + 2 * R / (s - 1))
    assert v < 3
    return v


def fine_bound(n: int, e: int, r: int, ell: int, delta, r0: int) -> Fraction:
    """ell^r (n-r0)^r / ((e-r0)(e-(1-delta)n)^(r-1))."""
    delta = to_fraction(delta)
    if r < 1 or ell < 1:
        raise ParameterError("need r >= 1 and ell >= 1")
    if not e > (1 - delta) * n:
        raise ParameterError(f"need e > (1-delta)n = {(1 - delta) * n}, got e={e}")
    if not e > r0:
        raise ParameterError(f"need e > r0, got e={e}, r0={r0}")
    return Fraction(ell ** r * (n - r0) ** r) / ((e - r0) * (e - (1 - delta) * n) ** (r - 1))


def prune_iterations(eps, r: int, ell: int, eta) -> int:
    """ceil(eps^-r (r ln(ell/eps) + ln(1/eta))), at least 1."""
    eps = _eps(eps)
    eta = to_fraction(eta)
    if not 0 < eta < 1:
        raise ParameterError(f"eta must lie in (0, 1), got {eta}")
    if r < 0 or ell < 1:
        raise ParameterError("need r >= 0 and ell >= 1")
    if r == 0:
        return 1
    e = float(eps)
    return max(1, math.ceil(e ** -r * (r * math.log(ell / e) + math.log(1 / float(eta)))))


@dataclass
class BoundReport:
    radius: Fraction | None = None
    beta: float | None = None
    exponent: float | None = None
    L_main: float | None = None
    L_improved: float | None = None
    L_fixed_m: Fraction | None = None
    cond2_holds: bool | None = None
    singleton: Fraction | None = None
    m2: Fraction | None = None
    L_mult: float | None = None
    omitted: dict | None = None

    def to_json(self) -> dict:
        out = {}
        for k, v in asdict(self).items():
            if isinstance(v, Fraction):
                v = f"{v.numerator}/{v.denominator}"
            out[k] = v
        return out


def bound_report(*, m=None, s=None, R=None, eps=None, ell=1, delta=None, d=None, p=None) -> BoundReport:
    """Evaluate every bound whose inputs are present; record why others were skipped."""
    rep = BoundReport(omitted={})

    def attempt(name, fn, needed):
        missing = [k for k, v in needed.items() if v is None]
        if missing:
            rep.omitted[name] = "missing " + ", ".join(missing)
            return None
        try:
            return fn()
        except ParameterError as exc:
            rep.omitted[name] = str(exc)
            return None

    rep.radius = attempt("radius", lambda: frs_radius(m, s, R), {"m": m, "s": s, "R": R})
    rep.singleton = attempt("singleton", lambda: generalized_singleton(m, R),
                            {"m": m, "R": R})
    rep.L_main = attempt("L_main", lambda: list_bound_recovery(ell, eps), {"eps": eps})
    imp = attempt("L_improved", lambda: list_bound_recovery_improved(ell, eps, delta, s),
                  {"eps": eps, "delta": delta, "s": s})
    if imp is not None:
        rep.beta, rep.exponent, rep.L_improved = imp.beta, imp.exponent, imp.L
    if m == 2:
        rep.m2 = attempt("m2", lambda: m2_bound(s, R), {"s": s, "R": R})
    fm = attempt("L_fixed_m", lambda: fixed_m_bound(m, s, R), {"m": m, "s": s, "R": R})
    if fm is not None:
        rep.L_fixed_m, rep.cond2_holds = fm.L, fm.cond2_holds
    rep.L_mult = attempt("L_mult", lambda: list_bound_mult(ell, eps, d, p), {"eps": eps, "d": d, "p": p})
    return rep
