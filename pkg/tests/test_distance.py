import json
from importlib import resources

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import min_logical_weight as brute_min_logical
from quditldpc.bb import BBSpec, CssCode, build_bb, extend_scalars
from quditldpc.distance import (
    EXACT,
    LOWER_BOUND_ONLY,
    TIMEOUT,
    DistanceQuery,
    classical_min_weight,
    combined_distance,
    css_distance,
    min_logical_weight,
    min_weight_solution,
)
from quditldpc.gf import GF
from quditldpc.hgp import LacrossSpec, build_lacross
from quditldpc.linalg import matmul
from quditldpc.shyps import build_simplex

GOLDEN = json.loads(resources.files("quditldpc").joinpath("data/golden.json").read_text())


def bb24():
    return build_bb(BBSpec.from_strings("3", 4, 3, "x + x^2", "x^3 + 2*y + 2*y^2"))


def test_bb24_distance_and_witness():
    code = bb24()
    dx, dz = css_distance(code, 120, cap=6)
    assert dx.status == dz.status == EXACT
    assert dx.weight == dz.weight == 4
    for res, H in ((dx, code.HZ), (dz, code.HX)):
        assert np.count_nonzero(res.witness) == 4
        assert not np.any(matmul(code.F, H, res.witness))
    assert combined_distance(dx, dz) == (4, 4)


def test_lex_min_witness_is_smallest():
    code = bb24()
    qy = DistanceQuery(code.F, code.HZ, code.HX, 6, 120)
    a = min_logical_weight(qy, lex_min=True)
    b = min_logical_weight(DistanceQuery(code.F, code.HZ, code.HX, 6, 120, seed=5), lex_min=True)
    assert a.info["lex_min"] and np.array_equal(a.witness, b.witness)
    plain = min_logical_weight(qy)
    assert plain.weight == a.weight
    assert tuple(a.witness) <= tuple(plain.witness) or plain.info.get("witness_source") == "warm_start"


def test_zero_checks_give_distance_one():
    F = GF(3)
    code = CssCode(F, np.zeros((0, 3), int), np.zeros((0, 3), int))
    dx, dz = css_distance(code)
    assert dx.weight == dz.weight == 1


def test_no_logicals():
    F = GF(3)
    H = np.array([[1, 1, 0]])
    R = np.array([[1, 2, 0], [0, 0, 1]])  # spans ker H
    res = min_logical_weight(DistanceQuery(F, H, R, weight_cap=4))
    assert res.status == LOWER_BOUND_ONLY and res.info["no_logicals"]
    assert res.weight is None and res.certified_lower_bound == 5


def test_bad_exclusion():
    F = GF(3)
    with pytest.raises(ValueError):
        min_logical_weight(DistanceQuery(F, [[1, 0]], [[1, 0]]))


def test_classical_examples():
    assert classical_min_weight(GF(3), [[1, 2, 0], [0, 1, 2]]).weight == 3
    S = build_simplex(3, 2)
    assert classical_min_weight(S.F, S.H).weight == 3
    res = classical_min_weight(GF(5), np.eye(4, dtype=int), cap=4)
    assert res.status == LOWER_BOUND_ONLY and res.weight is None


def test_timeout_gives_certified_bound():
    spec = LacrossSpec(GF(3), 8, 3, (2, 1, 1))
    code = build_lacross(spec)
    res = min_logical_weight(DistanceQuery(code.F, code.HX, code.HZ, 10, 0.5, warm_start=0))
    assert res.status in (TIMEOUT, EXACT)
    if res.status == TIMEOUT:
        assert res.weight is None and res.certified_lower_bound >= 1


def test_monotone_lower_bounds():
    code = build_lacross(LacrossSpec(GF(3), 8, 3, (2, 1, 1)))
    last = 0
    for budget in (0.05, 0.5, 3.0):
        res = min_logical_weight(DistanceQuery(code.F, code.HX, code.HZ, 10, budget, warm_start=0))
        lb = res.weight if res.exact else res.certified_lower_bound
        assert lb >= last
        last = lb


@pytest.mark.parametrize("row", [r for r in GOLDEN["table2"] if r["n"] <= 30 and r["field"] == "3"],
                         ids=lambda r: str(r["n"]))
def test_extension_field_keeps_distance(row):
    code = build_bb(BBSpec.from_strings(row["field"], row["l"], row["m"], row["A"], row["B"]))
    big = extend_scalars(code, 2)
    dx, dz = css_distance(big, 300, cap=6)
    assert (big.n, big.k, min(dx.weight, dz.weight)) == (row["n"], row["k"], row["d"])


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3]), st.integers(3, 7), st.integers(0, 2**31))
def test_matches_brute_force(p, n, seed):
    F = GF(p)
    rng = np.random.default_rng(seed)
    H = rng.integers(0, p, (int(rng.integers(1, n)), n))
    res = classical_min_weight(F, H, cap=n)
    assert res.weight == brute_min_logical(H, np.zeros((0, n), int), p)
    if res.weight is not None:
        assert not np.any(matmul(F, H, res.witness))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 5]), st.integers(2, 7), st.integers(0, 2**31))
def test_min_weight_solution(p, n, seed):
    from oracles import min_weight_coset

    F = GF(p)
    rng = np.random.default_rng(seed)
    H = rng.integers(0, p, (int(rng.integers(1, n)), n))
    e = rng.integers(0, p, n) * (rng.random(n) < 0.4)
    s = matmul(F, H, e)
    x, exact = min_weight_solution(F, H, s)
    assert exact and np.array_equal(matmul(F, H, x), s)
    if p ** n <= 20000:
        assert np.count_nonzero(x) == min_weight_coset(H, s, p)


def test_threads_agree():
    code = bb24()
    one = css_distance(code, 120, cap=6)
    two = css_distance(code, 120, cap=6, threads=2)
    assert [r.weight for r in one] == [r.weight for r in two]
