from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from frslist.algebra import Field, rank
from frslist.analysis import (apply_fine_bound, closure, closure_size_bruteforce, column_kernel_dims,
                              iterative_fraction_check, projection_dim, space_stats, valid_vector_stats)
from frslist.codes import FrsParams, RecoverySets, encode
from frslist.decoder import frs_list_recover
from frslist.errors import BudgetExceeded, InvariantViolation, ParameterError

F = Fraction


def _recovered(params, ell, m, seed):
    rng = np.random.default_rng(seed)
    msgs = [params.random_message(rng) for _ in range(ell)]
    words = [encode(params, f).columns for f in msgs]
    S = RecoverySets([list(dict.fromkeys(w[i] for w in words)) for i in range(params.n)], ell=ell)
    return msgs, frs_list_recover(params, S, m)


def test_single_codeword_dims():
    V = np.array([[[1, 2], [3, 4], [0, 1]]])
    st_ = column_kernel_dims(V, 2, F(1, 2), 5)
    assert st_.dims == (0, 0, 0) and st_.mean == 0 and st_.r0 == 0
    V = np.array([[[1, 2], [0, 0], [0, 0], [0, 1]]])
    st_ = column_kernel_dims(V, 2, F(1, 2), 5)
    assert st_.mean == F(2, 4) and st_.r0 == 2 and st_.bound == F(1, 2) / F(1, 2)
    assert st_.to_json() == {"dims": [0, 1, 1, 0], "mean": "1/2", "bound": "1/1", "r0": 2, "r": 1}


def test_dependent_basis_rejected():
    V = np.array([[[1, 2]], [[2, 4]]])
    with pytest.raises(ParameterError):
        column_kernel_dims(V, 2, F(1, 2), 5)


def test_bound_undefined_when_r_reaches_s():
    V = np.array([[[1], [0]], [[0], [1]]])
    assert column_kernel_dims(V, 1, F(1, 2), 5).bound is None


def test_decoder_direction_space_bound(medium):
    for seed in range(5):
        _, space = _recovered(medium, 2, 3, seed)
        stats = space_stats(space)
        d = stats["direction"]
        assert d.r == space.dimension >= 1 and d.holds


def test_iterative_fraction(medium):
    msgs, space = _recovered(medium, 2, 3, 0)
    assert space.dimension == 1
    A = list(range(medium.n))
    frac = iterative_fraction_check(space.basis_codewords(), A, F(1, 2), medium.delta, medium.s, medium.q)
    assert frac >= F(1, 8)
    with pytest.raises(ParameterError):
        iterative_fraction_check(space.basis_codewords(), A[:10], F(1, 2), medium.delta, medium.s, medium.q)
    with pytest.raises(ParameterError):  # dim(U)/s = 1/8 > eps/4
        iterative_fraction_check(space.basis_codewords(), A, F(1, 4), medium.delta, medium.s, medium.q)


def test_iterative_fraction_threshold_collapse():
    # dim U = 1 and beta < 1: only columns where U is nonzero count
    one, zero = [1] + [0] * 7, [0] * 8
    V = np.array([[one] * 6 + [zero] * 2])
    frac = iterative_fraction_check(V, range(8), F(1, 2), F(3, 4), 8, 5)
    assert frac == F(6, 8)


def test_iterative_fraction_violation_is_loud():
    V = np.array([[[1] + [0] * 7] + [[0] * 8] * 15])
    with pytest.raises(InvariantViolation):
        iterative_fraction_check(V, range(16), F(1, 2), F(3, 4), 8, 5)


def test_valid_vectors_r1():
    V = np.array([[[1, 2], [0, 0], [3, 1], [0, 0], [4, 4]]])
    st_ = valid_vector_stats(V, t_max=1, p=5)
    assert st_.r_seq[0] == st_.R_seq[0] == 2  # zero columns
    assert st_.r_seq[1] == st_.R_seq[1] == 5


def test_basic_property_on_reed_solomon():
    # s = 1: every length-1 prefix is rank deficient and R_{r-1} <= n(1 - delta) holds literally
    params = FrsParams(Field(13), 1, 8, 2)
    for seed in range(5):
        rng = np.random.default_rng(seed)
        V = np.array([encode(params, params.random_message(rng)).array for _ in range(2)])
        if rank(V.reshape(2, -1), 13) < 2:
            continue
        st_ = valid_vector_stats(V, p=13)
        assert st_.R_seq[1] <= params.n * (1 - params.delta)
        assert st_.R_deficient_seq[1] == st_.R_seq[1]


def test_basic_property_on_folded_decoder_output():
    # r = 2 decoder output with s = 3: one column already has full projection dimension,
    # so the literal R_1 is n; the rank-deficient variant stays within n(1 - delta)
    params = FrsParams(Field(13), 3, 4, 1)
    for seed in range(5):
        _, space = _recovered(params, 3, 3, seed)
        assert space.dimension == 2
        st_ = valid_vector_stats(space.basis_codewords(), p=13)
        assert st_.R_seq[1] == params.n > params.n * (1 - params.delta)
        assert all(x is None or x <= params.n * (1 - params.delta) for x in st_.R_deficient_seq)


def test_budget():
    V = np.eye(3, dtype=np.int64).reshape(3, 3, 1)
    with pytest.raises(BudgetExceeded):
        valid_vector_stats(V, t_max=2, budget=8, p=5)
    with pytest.raises(ParameterError):
        valid_vector_stats(V)


subspaces = st.tuples(st.integers(1, 3), st.integers(2, 6), st.integers(1, 2), st.integers(0, 2**32))


def _random_V(r, n, s, seed, p=5, zero_bias=True):
    rng = np.random.default_rng(seed)
    V = rng.integers(0, p, (r, n, s))
    if zero_bias:
        V[:, rng.random(n) < 0.3, :] = 0  # shared zero columns make closures nontrivial
    return V


@settings(max_examples=60)
@given(subspaces, st.data())
def test_greedy_closure_matches_bruteforce(shape, data):
    r, n, s, seed = shape
    V = _random_V(r, n, s, seed)
    assume(rank(V.reshape(r, -1), 5) == r)
    cols = data.draw(st.sets(st.integers(0, n - 1), max_size=n))
    assert len(closure(V, cols, 5)) == closure_size_bruteforce(V, cols, 5)


@settings(max_examples=60)
@given(subspaces)
def test_sequences_monotone(shape):
    r, n, s, seed = shape
    V = _random_V(r, n, s, seed)
    assume(rank(V.reshape(r, -1), 5) == r)
    st_ = valid_vector_stats(V, t_max=min(r, 3), p=5)
    assert all(a <= b for a, b in zip(st_.r_seq, st_.r_seq[1:]))
    assert all(a <= b for a, b in zip(st_.R_seq, st_.R_seq[1:]))
    assert all(i <= ri for i, ri in enumerate(st_.r_seq))
    assert all(a <= b for a, b in zip(st_.r_seq, st_.R_seq))
    zero = sum(1 for j in range(n) if projection_dim(V, [j], 5) == 0)
    assert st_.r_seq[0] == st_.R_seq[0] == zero


def test_fine_bound_application():
    V = np.array([[[1], [1], [0]], [[0], [1], [1]]])
    stats = column_kernel_dims(V, 1, F(2, 3), 5)
    assert stats.r0 == 0 and stats.bound is None
    assert apply_fine_bound(stats, 2, 1, F(2, 3)) == F(3 ** 2, 2 * 1)


def test_space_stats_variants(medium):
    _, space = _recovered(medium, 2, 3, 1)
    stats = space_stats(space)
    assert stats["span"].r in (space.dimension, space.dimension + 1)
    assert stats["direction"].r == space.dimension
