import json
from fractions import Fraction
from math import floor

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from frslist.algebra import Field, Polynomial, hasse_derivative
from frslist.bounds import frs_radius
from frslist.codes import FrsParams, MultParams, RecoverySets, corrupt, encode
from frslist.decoder import (CandidateSpace, frs_interpolation_matrix, frs_list_decode, frs_list_recover,
                             interpolation_degree, list_decode, mult_interpolation_matrix, mult_list_decode,
                             radius_threshold)
from frslist.errors import ParameterError
from frslist.experiments import load_config
from frslist.oracle import brute_force_list


def _split(Q, F, m, D, d):
    A0 = Polynomial(F, Q[:D + d + 1])
    A = [Polynomial(F, Q[D + d + 1 + k * (D + 1):D + d + 1 + (k + 1) * (D + 1)]) for k in range(m)]
    return A0, A


def test_frs_constraints_are_evaluations(rng):
    # on an uncorrupted codeword of f, constraint (i, j) applied to Q equals
    # A_0(x) + sum_k A_k(x) f(alpha^(k-1) x) at x = alpha^(is+j)
    params = load_config("tiny")
    F, p = params.field, params.q
    for m in (1, 2, 3):
        f = params.random_message(rng)
        D = 2
        M = frs_interpolation_matrix(params, RecoverySets.from_codeword(encode(params, f)), m, D)
        Q = rng.integers(0, p, M.shape[1])
        A0, A = _split(Q, F, m, D, params.d)
        R = A0
        for k in range(m):
            R = R + A[k] * f.scale_argument(pow(F.alpha, k, p))
        want = [R(pow(F.alpha, i * params.s + j, p)) for i in range(params.n) for j in range(params.s - m + 1)]
        assert list(M @ Q % p) == want


def test_mult_constraints_are_hasse_derivatives(rng):
    params = MultParams(Field(13), 3, 5, 4)
    F, p = params.field, params.q
    for m in (1, 2, 3):
        f = params.random_message(rng)
        D = 2
        M = mult_interpolation_matrix(params, encode(params, f), m, D)
        Q = rng.integers(0, p, M.shape[1])
        A0, A = _split(Q, F, m, D, params.d)
        R = A0
        for k in range(m):
            R = R + A[k] * hasse_derivative(f, k)
        want = [hasse_derivative(R, j)(a) for a in params.points for j in range(params.s - m + 1)]
        assert list(M @ Q % p) == want


def test_interpolation_degree():
    assert interpolation_degree(306, 3, 101) == 51
    assert interpolation_degree(160, 2, 49) == 37
    assert interpolation_degree(8, 2, 3) == 1
    assert interpolation_degree(3, 2, 10) == 0


def test_radius_threshold_values():
    th = radius_threshold(load_config("medium"), 3)
    assert (th.N, th.D, th.t_min, th.max_errors) == (306, 51, 26, 25)
    th = radius_threshold(load_config("singleton2"), 2)
    assert (th.N, th.D, th.t_min, th.max_errors) == (160, 37, 22, 18)
    assert radius_threshold(load_config("tiny"), 2).max_errors == 1
    # s = m: one window per column
    tiny = load_config("tiny")
    assert radius_threshold(tiny, 3).N == tiny.n
    assert radius_threshold(tiny, 2, ell=2).N == 2 * tiny.n * 2


def test_unique_decoding_radius_for_m1(medium):
    th = radius_threshold(medium, 1)
    half = floor(medium.n * (1 - medium.rate) / 2)
    assert abs(th.max_errors - half) <= 1


@pytest.mark.parametrize("name", ["medium", "medium_mult"])
@pytest.mark.parametrize("m", [1, 2, 3, 4, 8])
def test_zero_errors_returns_message(name, m, rng):
    params = load_config(name)
    f = params.random_message(rng)
    space = list_decode(params, encode(params, f), m)
    assert space.dimension <= m - 1
    if radius_threshold(params, m).max_errors >= 0:
        assert space.contains(f)
    else:
        # the threshold exceeds n: nothing is promised, even for an exact codeword
        assert m == 8


@pytest.mark.parametrize("name", ["medium", "medium_mult"])
def test_containment_at_max_errors(name, rng):
    params = load_config(name)
    e = radius_threshold(params, 3).max_errors
    for _ in range(5):
        f = params.random_message(rng)
        space = list_decode(params, corrupt(encode(params, f), e, rng, params.q), 3)
        assert space.contains(f) and space.dimension <= 2


def test_m1_unique_decoding(medium, rng):
    e = floor(medium.n * (1 - medium.rate) / 2) - 1
    for params in (medium, load_config("medium_mult")):
        f = params.random_message(rng)
        space = list_decode(params, corrupt(encode(params, f), e, rng, params.q), 1)
        assert space.dimension == 0 and space.offset == f


def test_singleton2_decode(rng):
    params = load_config("singleton2")
    assert floor(frs_radius(2, 5, params.rate) * params.n) == 18
    f = params.random_message(rng)
    space = frs_list_decode(params, corrupt(encode(params, f), 18, rng, params.q), 2)
    assert space.contains(f) and space.dimension <= 1


def test_tiny_brute_force_list_contained(tiny, rng):
    for _ in range(10):
        f = tiny.random_message(rng)
        y = corrupt(encode(tiny, f), 1, rng, tiny.q)
        space = frs_list_decode(tiny, y, 2)
        assert space.dimension <= 1 and space.contains(f)
        for g in brute_force_list(tiny, RecoverySets.from_codeword(y), Fraction(1, 4)):
            assert space.contains(g)


def _planted_pair(params, rng):
    f, g = params.random_message(rng), params.random_message(rng)
    cf, cg = encode(params, f).columns, encode(params, g).columns
    S = RecoverySets([[a] if a == b else [a, b] for a, b in zip(cf, cg)], ell=2)
    return f, g, S


def test_list_recovery_contains_both_and_is_affine(medium, rng):
    f, g, S = _planted_pair(medium, rng)
    space = frs_list_recover(medium, S, 3)
    assert space.contains(f) and space.contains(g)
    assert 1 <= space.dimension <= 2
    for lam in rng.integers(0, medium.q, 5):
        lam = int(lam)
        h = Polynomial(medium.field, [(lam * a + (1 - lam) * b) % medium.q
                                      for a, b in zip(f.padded(medium.d + 1), g.padded(medium.d + 1))])
        assert space.contains(h)


def test_inconsistent_extraction_gives_empty_space(tiny, rng):
    # a uniformly random word is usually far from every codeword; some seeds give no candidates at all
    empties = 0
    for _ in range(30):
        y = corrupt(encode(tiny, tiny.random_message(rng)), tiny.n, rng, tiny.q)
        space = frs_list_decode(tiny, y, 2)
        if space.is_empty:
            empties += 1
            assert space.dimension == -1 and not space.contains(tiny.random_message(rng))
            assert space.to_json()["offset"] is None
    assert empties > 0


def test_parameter_errors(tiny, rng):
    y = encode(tiny, tiny.random_message(rng))
    for m in (0, 4, True):
        with pytest.raises(ParameterError):
            frs_list_decode(tiny, y, m)
    low = MultParams(Field(5), 3, 4, 6)
    with pytest.raises(ParameterError):
        mult_list_decode(low, encode(low, low.random_message(rng)), 2)
    with pytest.raises(ParameterError):
        frs_list_decode(load_config("medium"), y, 2)


def test_space_json_round_trip(medium, rng):
    _, _, S = _planted_pair(medium, rng)
    space = frs_list_recover(medium, S, 3)
    obj = json.loads(json.dumps(space.to_json()))
    assert len(obj["offset"]) == medium.d + 1
    back = CandidateSpace.from_json(medium, obj)
    assert back.to_json() == space.to_json() and back.check_independent()


@settings(max_examples=25)
@given(st.integers(0, 2**32), st.integers(0, 1))
def test_tiny_containment_property(seed, e):
    tiny = load_config("tiny")
    r = np.random.default_rng(seed)
    f = tiny.random_message(r)
    for m in (1, 2, 3):
        th = radius_threshold(tiny, m)
        y = corrupt(encode(tiny, f), min(e, th.max_errors), r, tiny.q)
        space = frs_list_decode(tiny, y, m)
        assert space.contains(f) and space.dimension <= m - 1
