import itertools
import warnings

import numpy as np
import pytest

from oracles import rank_mod_p
from quditldpc.distance import DistanceQuery, classical_min_weight, min_logical_weight
from quditldpc.gf import GF
from quditldpc.linalg import matmul, rank
from quditldpc.shyps import (
    TooLarge,
    build_shyps,
    build_simplex,
    cyclic_simplex_check,
    gcd_is_primitive,
    nonexistence_trials,
    projective_points,
    weight_stats,
    weights_table,
)


@pytest.mark.parametrize("q,r", [(2, 3), (3, 2), (3, 3), (4, 2), (5, 2), (2, 4)])
def test_simplex_structure(q, r):
    S = build_simplex(q, r)
    F = S.F
    assert S.n == (q**r - 1) // (q - 1)
    assert rank(F, S.G) == r and rank(F, S.H) == S.n - r
    assert not np.any(matmul(F, S.G, S.H.T))
    # columns pairwise non-proportional
    cols = [tuple(c) for c in S.G.T]
    for a, b in itertools.combinations(cols, 2):
        assert rank(F, np.array([a, b])) == 2


def test_simplex_examples():
    assert (build_simplex(2, 3).n, build_simplex(2, 3).d) == (7, 4)
    assert (build_simplex(3, 3).n, build_simplex(3, 3).d) == (13, 9)
    S = build_simplex(2, 3)
    assert classical_min_weight(S.F, S.H).weight == 4  # ker H is the simplex code
    assert classical_min_weight(S.F, S.G).weight == 3  # ker G is Hamming
    with pytest.raises(TooLarge):
        build_simplex(2, 13)


def test_simplex_constant_weight():
    S = build_simplex(3, 2)
    words = {tuple(np.asarray(c) @ S.G % 3) for c in itertools.product(range(3), repeat=2)}
    ws = {sum(1 for x in w if x) for w in words if any(w)}
    assert ws == {3}


@pytest.mark.parametrize("q,r,n,k", [(2, 3, 49, 9), (3, 2, 16, 4), (3, 3, 169, 9)])
def test_shyps_parameters(q, r, n, k):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        code = build_shyps(q, r)
    assert (code.n, code.k) == (n, k)
    assert code.commutation_ok()
    p = code.F.p
    if code.F.s == 1 and code.n <= 49:
        assert rank_mod_p(code.LX, p) - rank_mod_p(code.SX, p) == k


def test_r2_warns():
    with pytest.warns(UserWarning):
        build_shyps(3, 2)


@pytest.mark.parametrize("q,r", [(2, 3), (3, 2)])
def test_subsystem_distance(q, r):
    # dressed X logicals: commute with the Z stabilizers, not in the X gauge group
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        code = build_shyps(q, r)
    res = min_logical_weight(DistanceQuery(code.F, code.SZ, code.GX, weight_cap=code.d_analytic, time_budget=300))
    assert res.exact and res.weight == code.d_analytic


def test_weight_stats():
    assert weight_stats(np.zeros((2, 3), int)) == (0, 0)
    assert weight_stats(np.zeros((0, 3), int)) == (0, 0)
    assert weight_stats(build_simplex(3, 3).H)[0] == 3
    for r in (3, 4, 5):
        assert weight_stats(build_simplex(3, r).H) == (3, r + 1)


def test_weights_table_binary_is_cyclic_three_term():
    rows = weights_table(2, 5, 3)
    assert all(lo == hi == 3 for _, lo, hi in rows)
    H = cyclic_simplex_check(2, 3)
    assert rank(GF(2), H) == 7 - 3


def test_no_primitive_gcd_for_odd_q():
    rng = np.random.default_rng(0)
    assert nonexistence_trials(3, 3, 200, rng) == 0
    with pytest.raises(ValueError):
        cyclic_simplex_check(3, 3)
    # the binary case does have one
    assert gcd_is_primitive(GF(2), [1, 1, 0, 1, 0, 0, 0], 7, 3)


def test_projective_points_normalized():
    P = projective_points(GF(5), 3)
    for c in P.T:
        assert c[np.flatnonzero(c)[0]] == 1
