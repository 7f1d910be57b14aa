import numpy as np
import pytest

from quditldpc.bb import CssViolation
from quditldpc.distance import css_distance
from quditldpc.gf import GF
from quditldpc.hgp import (
    ClassicalCode,
    FieldMismatch,
    LacrossSpec,
    build_hgp,
    build_lacross,
    classical_params,
)
from quditldpc.linalg import matmul
from quditldpc.poly import circulant

HAMMING = [[1, 0, 1, 0, 1, 0, 1], [0, 1, 1, 0, 0, 1, 1], [0, 0, 0, 1, 1, 1, 1]]


def test_repetition_product():
    F = GF(3)
    C = ClassicalCode(F, circulant(F, [1, 2, 0]))
    assert (C.rank, C.k, C.kT) == (2, 1, 1)
    code = build_hgp(C, C)
    assert (code.n, code.k) == (18, 2)
    dx, dz = css_distance(code, 60, cap=6)
    assert dx.exact and dz.exact and min(dx.weight, dz.weight) == 3


def test_trivial_seed_gives_no_logicals():
    F = GF(5)
    C = ClassicalCode(F, np.eye(3, dtype=int))
    assert build_hgp(C, C).k == 0


def test_classical_params():
    assert classical_params(GF(3), [[1, 2, 0], [0, 1, 2]]) == (3, 1, 3)
    assert classical_params(GF(3), np.eye(4, dtype=int)) == (4, 0, None)
    assert classical_params(GF(2), HAMMING) == (7, 4, 3)


def test_errors():
    with pytest.raises(FieldMismatch):
        build_hgp(ClassicalCode(GF(3), [[1, 1]]), ClassicalCode(GF(5), [[1, 1]]))
    C = ClassicalCode(GF(3), [[1, 1]])
    with pytest.raises(CssViolation):
        build_hgp(C, C, coeffs=(1, 1, 1, 1))


def test_open_band_seed_has_full_rank():
    # nonzero top coefficient makes the band echelon, so DegenerateSeed never fires here
    for q in (3, 5, 7):
        F = GF(q)
        for n_c in range(3, 9):
            for k in range(2, n_c):
                spec = LacrossSpec(F, n_c, k, (1, q - 1, 1))
                assert ClassicalCode(F, spec.seed_matrix()).rank == n_c - k


@pytest.mark.parametrize("q", [2, 3, 5])
def test_k_formula_random(q):
    F = GF(q)
    rng = np.random.default_rng(q)
    for _ in range(30):
        A = ClassicalCode(F, F.random((int(rng.integers(1, 6)), int(rng.integers(1, 6))), rng))
        B = ClassicalCode(F, F.random((int(rng.integers(1, 6)), int(rng.integers(1, 6))), rng))
        code = build_hgp(A, B)
        assert code.n == A.n * B.nT + A.nT * B.n
        assert code.k == A.k * B.kT + A.kT * B.k
        alt = build_hgp(A, B.transpose())
        assert alt.k == A.k * B.k + A.kT * B.kT


@pytest.mark.parametrize(
    "q,n_c,k,alphas,n,kk",
    [(3, 8, 3, (2, 1, 1), 89, 9), (5, 6, 2, (4, 4, 3), 52, 4), (7, 5, 2, (6, 5, 1), 34, 4)],
)
def test_lacross_table_rows(q, n_c, k, alphas, n, kk):
    spec = LacrossSpec(GF(q), n_c, k, alphas)
    code = build_lacross(spec)
    assert (code.n, code.k) == (n, kk)
    seed = ClassicalCode(spec.F, spec.seed_matrix())
    assert seed.kT == 0 and seed.k == k
    # same code through the generic product with the transposed second seed
    via_hgp = build_hgp(seed, seed.transpose())
    assert (via_hgp.n, via_hgp.k) == (n, kk)


def test_lacross_periodic():
    spec = LacrossSpec(GF(3), 6, 2, (1, 1, 1), "periodic")
    code = build_lacross(spec)
    H = spec.seed_matrix()
    assert H.shape == (6, 6)
    assert code.n == 72
    seed = ClassicalCode(spec.F, H)
    assert code.k == 2 * seed.k**2
    assert not np.any(matmul(code.F, code.HX, code.HZ.T))


def test_lacross_json_roundtrip():
    spec = LacrossSpec(GF(5), 6, 2, (4, 4, 3))
    assert LacrossSpec.from_dict(spec.to_dict()) == spec
