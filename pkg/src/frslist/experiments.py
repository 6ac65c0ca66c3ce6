"""Seeded experiments over the pinned desk configurations.

Every experiment returns a JSON-ready report.  A failed theorem-level check
raises :class:`InvariantViolation` after the report is complete, with the
report attached as ``exc.report``.

Trial ``t`` of an experiment run with seed ``S`` draws from
``numpy.random.default_rng([S, t])``; trials are independent and the
aggregates do not depend on the order they run in.
"""
from __future__ import annotations

import json
import time
from collections import Counter
from fractions import Fraction
from importlib import resources
from math import floor

import numpy as np

from .analysis import apply_fine_bound, iterative_fraction_check, space_stats
from .bounds import fixed_m_bound, frs_radius, m2_bound
from .codes import CodeParams, Codeword, FrsParams, RecoverySets, corrupt, encode, params_from_json
from .decoder import frs_list_recover, list_decode, radius_threshold
from .errors import InvariantViolation, ParameterError
from .oracle import OracleBudget, brute_force_list
from .prune import PruneConfig, enumerate_list, prune


def load_config(name: str) -> CodeParams:
    text = resources.files("frslist.configs").joinpath(f"{name}.json").read_text()
    return params_from_json(json.loads(text))


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.default_rng([seed, trial])


def derived_seed(seed: int, trial: int, stream: int) -> int:
    return int(np.random.SeedSequence([seed, trial, stream]).generate_state(1, np.uint64)[0])


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _finish(report: dict, violations: list[str]) -> dict:
    report["violations"] = violations
    if violations:
        exc = InvariantViolation("; ".join(violations[:5]))
        exc.report = report
        raise exc
    return report


def run_singleton2(params: FrsParams | None = None, trials: int = 1000, seed: int = 0,
                   errors: int = 18, m: int = 2) -> dict:
    """Plant, corrupt, decode with m=2 and list the whole radius; the list never exceeds 2."""
    params = params or load_config("singleton2")
    start = time.perf_counter()
    rho = frs_radius(m, params.s, params.rate)
    th = radius_threshold(params, m)
    in_contract = errors <= th.max_errors and Fraction(errors, params.n) <= rho
    sizes = Counter()
    planted_missing = 0
    violations = []
    for t in range(trials):
        rng = trial_rng(seed, t)
        f = params.random_message(rng)
        y = corrupt(encode(params, f), errors, rng, params.q)
        space = list_decode(params, y, m)
        found = enumerate_list(space, RecoverySets.from_codeword(y), rho) if not space.is_empty else []
        sizes[len(found)] += 1
        if f not in found:
            planted_missing += 1
            if in_contract:
                violations.append(f"trial {t}: planted message not listed")
        if in_contract and len(found) > 2:
            violations.append(f"trial {t}: list size {len(found)} > 2")
    report = {
        "experiment": "singleton2",
        "params": params.to_json(),
        "m": m,
        "errors": errors,
        "radius": _frac(rho),
        "max_errors_guaranteed": th.max_errors,
        "in_contract": in_contract,
        "trials": trials,
        "seed": seed,
        "planted_missing": planted_missing,
        "max_list": max(sizes),
        "list_size_histogram": {str(k): v for k, v in sorted(sizes.items())},
        "m2_bound": _frac(m2_bound(params.s, params.rate)),
        "seconds": round(time.perf_counter() - start, 3),
    }
    return _finish(report, violations)


def run_containment(params: CodeParams, m: int, trials: int = 500, seed: int = 0,
                    errors: int | None = None, list_rho: Fraction | None = None) -> dict:
    """Planted-message containment and dimension checks; optionally list sizes at ``list_rho``."""
    start = time.perf_counter()
    th = radius_threshold(params, m)
    if errors is None:
        errors = th.max_errors
    dims = Counter()
    sizes = Counter()
    violations = []
    for t in range(trials):
        rng = trial_rng(seed, t)
        f = params.random_message(rng)
        y = corrupt(encode(params, f), errors, rng, params.q)
        space = list_decode(params, y, m)
        dims[space.dimension] += 1
        if errors <= th.max_errors and not space.contains(f):
            violations.append(f"trial {t}: planted message outside the candidate space")
        if space.dimension > m - 1:
            violations.append(f"trial {t}: dimension {space.dimension} > m-1")
        if list_rho is not None:
            found = enumerate_list(space, RecoverySets.from_codeword(y), list_rho)
            sizes[len(found)] += 1
    report = {
        "params": params.to_json(),
        "m": m,
        "errors": errors,
        "max_errors_guaranteed": th.max_errors,
        "D": th.D,
        "trials": trials,
        "seed": seed,
        "dimension_histogram": {str(k): v for k, v in sorted(dims.items())},
        "max_dimension": max(dims),
        "seconds": round(time.perf_counter() - start, 3),
    }
    if list_rho is not None:
        report["list_radius"] = _frac(list_rho)
        report["max_list"] = max(sizes)
        report["list_size_histogram"] = {str(k): v for k, v in sorted(sizes.items())}
    report["violations"] = violations
    return report


def run_listsize(params: CodeParams | None = None, m: int = 3, trials: int = 500, seed: int = 0) -> dict:
    """Largest list at the decoding radius for parameter ``m`` against the fixed-m bound."""
    params = params or load_config("medium")
    rho = frs_radius(m, params.s, params.rate)
    if rho <= 0:
        raise ParameterError(f"decoding radius {rho} is empty for m={m}")
    errors = min(radius_threshold(params, m).max_errors, floor(rho * params.n))
    report = run_containment(params, m, trials, seed, errors=errors, list_rho=rho)
    report["experiment"] = "listsize"
    if m >= 3:
        b = fixed_m_bound(m, params.s, params.rate)
        report["cond2_holds"] = b.cond2_holds
        bound = b.L
    elif m == 2:
        bound = m2_bound(params.s, params.rate)
    else:
        bound = Fraction(1)
    report["list_bound"] = _frac(bound)
    violations = report.pop("violations")
    if report["max_list"] > bound:
        violations.append(f"observed list {report['max_list']} exceeds bound {bound}")
    return _finish(report, violations)


def _two_codeword_sets(params: FrsParams, rng: np.random.Generator, count: int = 2):
    msgs = [params.random_message(rng) for _ in range(count)]
    words = [encode(params, f).columns for f in msgs]
    sets = [list(dict.fromkeys(w[i] for w in words)) for i in range(params.n)]
    return msgs, RecoverySets(sets, ell=count)


def _tiny_instance(params: FrsParams, t: int, rng: np.random.Generator, m: int, recovery: bool = True):
    """Cycle through received-word shapes; with ``recovery`` every fourth instance is a two-codeword recovery."""
    kind = t % (4 if recovery else 3)
    if kind == 0:
        f = params.random_message(rng)
        y = corrupt(encode(params, f), int(rng.integers(0, 2)), rng, params.q)
        return RecoverySets.from_codeword(y), list_decode(params, y, m)
    if kind == 1:
        y = encode(params, params.random_message(rng))
        y = corrupt(y, params.n, rng, params.q)
        return RecoverySets.from_codeword(y), list_decode(params, y, m)
    if kind == 2:
        f, g = (encode(params, params.random_message(rng)).columns for _ in range(2))
        cut = params.n - 1
        y = Codeword(f[:cut] + g[cut:])
        return RecoverySets.from_codeword(y), list_decode(params, y, m)
    _, S = _two_codeword_sets(params, rng)
    return S, frs_list_recover(params, S, m)


def run_oracle_equivalence(params: FrsParams | None = None, trials: int = 100, seed: int = 0,
                           m: int = 2, rho: Fraction = Fraction(1, 4), eps: Fraction = Fraction(1, 12),
                           eta: Fraction = Fraction(1, 100)) -> dict:
    """Brute-force list within the decoder space, and Prune equal to exhaustive listing."""
    params = params or load_config("tiny")
    start = time.perf_counter()
    violations = []
    dims = Counter()
    sizes = Counter()
    for t in range(trials):
        rng = trial_rng(seed, t)
        S, space = _tiny_instance(params, t, rng, m, recovery=False)
        truth = brute_force_list(params, S, rho)
        sizes[len(truth)] += 1
        dims[space.dimension] += 1
        outside = [f for f in truth if not space.contains(f)]
        if outside:
            violations.append(f"trial {t}: {len(outside)} brute-force codewords outside the space")
        if space.is_empty:
            continue
        listed = enumerate_list(space, S, rho)
        if listed != truth:
            violations.append(f"trial {t}: exhaustive listing differs from brute force")
        pruned = prune(space, S, rho, PruneConfig(eps, eta, seed=derived_seed(seed, t, 1)))
        if pruned != listed:
            violations.append(f"trial {t}: prune output differs from exhaustive listing")
    report = {
        "experiment": "oracle-equivalence",
        "params": params.to_json(),
        "m": m,
        "radius": _frac(rho),
        "trials": trials,
        "seed": seed,
        "dimension_histogram": {str(k): v for k, v in sorted(dims.items())},
        "list_size_histogram": {str(k): v for k, v in sorted(sizes.items())},
        "seconds": round(time.perf_counter() - start, 3),
    }
    return _finish(report, violations)


def run_prune(params: FrsParams | None = None, trials: int = 200, seed: int = 0, m: int = 2,
              eps: Fraction = Fraction(1, 12), eta: Fraction = Fraction(1, 100)) -> dict:
    """Prune completeness against exhaustive listing; the miss rate must stay within 2*eta."""
    params = params or load_config("tiny")
    start = time.perf_counter()
    violations = []
    expected = missed = 0
    dims = Counter()
    for t in range(trials):
        rng = trial_rng(seed, t)
        S, space = _tiny_instance(params, t, rng, m)
        if space.is_empty:
            dims[-1] += 1
            continue
        dims[space.dimension] += 1
        rho = Fraction(params.n - (floor((space.D + params.d) / (params.s - m + 1)) + 1), params.n)
        truth = enumerate_list(space, S, rho)
        pruned = prune(space, S, rho, PruneConfig(eps, eta, seed=derived_seed(seed, t, 1)))
        extra = [f for f in pruned if f not in truth]
        if extra:
            violations.append(f"trial {t}: prune returned {len(extra)} codewords outside the radius")
        expected += len(truth)
        missed += sum(1 for f in truth if f not in pruned)
    rate = Fraction(missed, expected) if expected else Fraction(0)
    if rate > 2 * eta:
        violations.append(f"miss rate {float(rate):.4f} exceeds 2*eta = {float(2 * eta)}")
    report = {
        "experiment": "prune",
        "params": params.to_json(),
        "m": m,
        "epsilon": _frac(eps),
        "eta": _frac(eta),
        "trials": trials,
        "seed": seed,
        "listed_codewords": expected,
        "missed_codewords": missed,
        "miss_rate": float(rate),
        "dimension_histogram": {str(k): v for k, v in sorted(dims.items())},
        "seconds": round(time.perf_counter() - start, 3),
    }
    return _finish(report, violations)


def run_subspace(params: FrsParams | None = None, trials: int = 100, seed: int = 0, m: int = 3,
                 max_noise: int = 6) -> dict:
    """Column statistics of decoder-produced direction spaces.

    Each trial list-recovers two planted codewords (sets of size 2, a few
    columns corrupted per codeword), so the candidate space has dimension >= 1.
    """
    params = params or load_config("medium")
    start = time.perf_counter()
    violations = []
    worst_ratio = Fraction(0)
    dims = Counter()
    fine = []
    fractions = []
    r0_pairs = Counter()
    eps_iter = Fraction(1, 2)
    checked = 0
    for t in range(trials):
        rng = trial_rng(seed, t)
        msgs, S = _two_codeword_sets(params, rng)
        sets = [list(c) for c in S.sets]
        agree = []
        for k, f in enumerate(msgs):
            cols = encode(params, f).columns
            noisy = set(int(i) for i in rng.choice(params.n, int(rng.integers(0, max_noise + 1)), replace=False))
            for i in noisy:
                if cols[i] in sets[i]:
                    j = sets[i].index(cols[i])
                    while True:
                        v = tuple(int(x) for x in rng.integers(0, params.q, params.s))
                        if v not in sets[i]:
                            break
                    sets[i][j] = v
            agree.append([i for i in range(params.n) if cols[i] in sets[i]])
        S = RecoverySets(sets, ell=2)
        space = frs_list_recover(params, S, m)
        for f in msgs:
            if not space.contains(f):
                violations.append(f"trial {t}: planted message outside the recovered space")
        r = space.dimension
        dims[r] += 1
        if r < 1:
            continue
        st = space_stats(space)
        d = st["direction"]
        r0_pairs[f"{d.r0},{st['span'].r0}"] += 1
        if d.bound is None:
            continue
        checked += 1
        if not d.holds:
            violations.append(f"trial {t}: mean dim(V∩H_i) = {d.mean} exceeds {d.bound}")
        if d.bound:
            worst_ratio = max(worst_ratio, d.mean / d.bound)
        e = min(len(a) for a in agree)
        if e > (1 - params.delta) * params.n and e > d.r0:
            fine.append(float(apply_fine_bound(d, e, 2, params.delta)))
        if Fraction(r, params.s) <= eps_iter / 4:
            A = max(agree, key=len)
            if len(A) >= (1 - params.delta + eps_iter) * params.n:
                fractions.append(float(iterative_fraction_check(
                    space.basis_codewords(), A, eps_iter, params.delta, params.s, params.q)))
    report = {
        "experiment": "subspace",
        "params": params.to_json(),
        "m": m,
        "trials": trials,
        "seed": seed,
        "dimension_histogram": {str(k): v for k, v in sorted(dims.items())},
        "spaces_checked": checked,
        "worst_mean_over_bound": float(worst_ratio),
        "r0_direction_vs_span": dict(sorted(r0_pairs.items())),
        "fine_bound_max": max(fine) if fine else None,
        "iterative_fraction_min": min(fractions) if fractions else None,
        "iterative_checks": len(fractions),
        "seconds": round(time.perf_counter() - start, 3),
    }
    return _finish(report, violations)
