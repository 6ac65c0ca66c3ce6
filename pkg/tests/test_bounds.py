import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from frslist.bounds import (bound_report, cond2, fine_bound, fixed_m_bound, frs_radius, generalized_singleton,
                            iterative_beta, list_bound_decoding, list_bound_mult, list_bound_recovery,
                            list_bound_recovery_improved, m2_bound, prune_iterations, to_fraction)
from frslist.errors import ParameterError

F = Fraction


def test_to_fraction():
    assert to_fraction(0.2) == F(1, 5)
    assert to_fraction("3/7") == F(3, 7)
    assert to_fraction(" 0.05 ") == F(1, 20)
    for bad in ["x", float("nan"), None, True]:
        with pytest.raises(ParameterError):
            to_fraction(bad)


def test_radius():
    assert frs_radius(1, 8, F(1, 4)) == F(3, 8) == (1 - F(1, 4)) / 2
    assert frs_radius(2, 5, F(1, 3)) == F(7, 18)
    assert frs_radius(2, 5, F(1, 4)) == F(11, 24)
    assert frs_radius(3, 8, F(1, 4)) == F(1, 2)
    assert abs(frs_radius(2, 10**6, F(1, 4)) - F(1, 2)) < F(1, 10**5)
    with pytest.raises(ParameterError):
        frs_radius(4, 3, F(1, 4))


def test_singleton():
    assert generalized_singleton(1, F(1, 3)) == F(1, 3)
    assert generalized_singleton(2, F(1, 4)) == F(1, 2)
    assert 1 - F(1, 4) - generalized_singleton(10**6, F(1, 4)) < F(1, 10**6)


def test_list_bounds():
    assert list_bound_decoding(1) == 1
    assert list_bound_decoding(F(1, 2)) == 256
    assert list_bound_decoding(F(1, 4)) == 2**32
    assert list_bound_recovery(1, F(1, 3)) == list_bound_decoding(F(1, 3))
    assert list_bound_recovery(2, 1) == 256
    assert list_bound_recovery(2, F(1, 2)) == 4**16


def test_improved_bound():
    b = list_bound_recovery_improved(1, 0.2, 0.9, 400)
    beta = 0.1 * 1.1 / (0.3 * 0.95)
    assert b.beta == pytest.approx(beta, rel=1e-12) and b.beta == pytest.approx(0.386, abs=5e-4)
    assert b.exponent == pytest.approx(5 + math.log(4) / math.log(1 / beta), rel=1e-12)
    assert b.exponent == pytest.approx(6.46, abs=5e-3)
    assert b.L == pytest.approx(6.0e11, rel=0.05)
    with pytest.raises(ParameterError):
        list_bound_recovery_improved(1, 0.2, 0.9, 399)  # r/s above eps/4
    with pytest.raises(ParameterError):
        list_bound_recovery_improved(1, 0.5, 0.4, 10**4)  # eps >= delta


@given(st.integers(1, 4), st.fractions(F(1, 100), 1), st.fractions(F(1, 100), F(99, 100)))
def test_beta_below_one_when_defined(ell, eps, delta):
    if eps >= delta:
        return
    r = 4 * ell / eps
    s = math.ceil(4 * r / eps)
    assert iterative_beta(eps, delta, r, s) < 1


def test_mult_bound():
    assert list_bound_mult(1, F(1, 2), 0, 11) == list_bound_recovery(1, F(1, 2))
    assert list_bound_mult(1, F(1, 2), 11, 11) == 2**16
    assert list_bound_mult(1, F(1, 2), 1, 10007) == pytest.approx(256, rel=0.01)
    with pytest.raises(ParameterError):
        list_bound_mult(1, F(1, 2), 1, 7)


def test_fixed_m_bound():
    big = fixed_m_bound(3, 10**6, F(1, 3))
    assert not big.cond2_holds and big.L == 12
    small = fixed_m_bound(3, 100, F(1, 10))
    assert small.cond2_holds and small.L == 12
    assert fixed_m_bound(4, 100, F(1, 100)).L == 108
    assert fixed_m_bound(3, 8, F(1, 4)).cond2_holds
    with pytest.raises(ParameterError):
        fixed_m_bound(2, 5, F(1, 3))


def test_fixed_m_exact_forms_approach_limits():
    b = fixed_m_bound(3, 10**9, F(1, 3))
    assert b.case2_exact == pytest.approx(12, rel=1e-6)
    c = fixed_m_bound(3, 10**9, F(1, 10))
    assert c.cond2_holds and c.case1_exact <= c.L


def test_cond2_boundary():
    # equality at m=3, R=1/3 only in the s -> infinity limit
    assert not cond2(3, 10**6, F(1, 3))
    assert cond2(3, 10**6, F(1, 4))


def test_m2_bound():
    assert m2_bound(5, F(1, 3)) == F(12, 5)
    assert 3 - m2_bound(10, F(1, 10**6)) < F(1, 10**4)
    for s in range(2, 60):
        for k in range(1, 50):
            assert m2_bound(s, F(k, 50)) < 3


def test_fine_bound():
    assert fine_bound(21, 14, 2, 1, F(2, 3), 0) == F(9, 2)
    assert fine_bound(21, 14, 1, 1, F(2, 3), 0) == F(21, 14)
    assert fine_bound(21, 14, 1, 1, F(2, 3), 3) == F(18, 11)
    assert fine_bound(21, 14, 2, 2, F(2, 3), 0) == 4 * F(9, 2)
    with pytest.raises(ParameterError):
        fine_bound(21, 7, 2, 1, F(2, 3), 0)


def test_prune_iterations():
    assert prune_iterations(F(1, 2), 0, 1, F(1, 10)) == 1
    assert prune_iterations(F(1, 2), 1, 1, math.exp(-2)) == 6
    a = prune_iterations(F(1, 10), 2, 1, F(1, 100))
    b = prune_iterations(F(1, 20), 2, 1, F(1, 100))
    assert 3.5 < b / a < 5


def test_report_lists_omissions():
    rep = bound_report(m=3, s=10**6, R=F(1, 3))
    assert rep.L_fixed_m == 12 and rep.m2 is None
    assert "L_main" in rep.omitted and "eps" in rep.omitted["L_main"]
    j = rep.to_json()
    assert j["L_fixed_m"] == "12/1" and j["radius"] == "999997/1999996"
    rep = bound_report(m=2, s=5, R=F(1, 3), eps=F(1, 2))
    assert rep.m2 == F(12, 5) and rep.radius == F(7, 18) and rep.L_main == 256
    assert "L_fixed_m" in rep.omitted
