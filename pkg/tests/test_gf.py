import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from quditldpc.gf import (
    CONWAY,
    GF,
    DivisionByZero,
    FieldTooLarge,
    NotCoprime,
    NotPrime,
    embedding,
    field_new,
    is_irreducible,
    parse_field,
    root_of_unity,
)

ORDERS = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 49]


def test_prime_fields():
    F = field_new(2, 1)
    assert F.q == 2 and F.irr == (0, 1)
    F = field_new(3, 1)
    assert F.add(2, 2) == 1
    assert GF(5).inv(3) == 2


def test_gf4_arithmetic():
    F = GF(4)
    assert F.irr == (1, 1, 1)
    assert F.mul(2, 2) == 3  # w*w = w+1
    assert F.mul(3, 3) == 2  # (w+1)^2 = w
    assert F.trace(2) == 1
    assert F.trace(0) == 0


def test_gf9_custom_irr_trace():
    F = field_new(3, 2, irr=[1, 0, 1])
    assert F.trace(1) == 2


def test_errors():
    with pytest.raises(NotPrime):
        field_new(4, 1)
    with pytest.raises(FieldTooLarge):
        field_new(2, 20)
    with pytest.raises(DivisionByZero):
        GF(7).inv(0)
    with pytest.raises(NotCoprime):
        root_of_unity(GF(3), 6)


@pytest.mark.parametrize("q", ORDERS)
def test_tables_and_primitive(q):
    F = GF(q)
    nz = np.arange(1, q)
    assert np.array_equal(F.exp[F.log[nz]], nz)
    assert F.order(F.prim) == q - 1
    assert all(F.pow(a, q - 1) == 1 for a in range(1, q))
    if F.s > 1:
        assert is_irreducible(F.irr, F.p)


def test_conway_entries_are_irreducible_and_primitive():
    for (p, s), irr in CONWAY.items():
        assert is_irreducible(irr, p)
        F = field_new(p, s)
        assert F.conway
        # x itself generates the group
        assert F.order(p) == F.q - 1


@pytest.mark.parametrize("q", ORDERS)
def test_field_axioms_random(q):
    F = GF(q)
    rng = np.random.default_rng(q)
    a, b, c = (rng.integers(0, q, 1000) for _ in range(3))
    assert np.array_equal(F.add(a, F.add(b, c)), F.add(F.add(a, b), c))
    assert np.array_equal(F.mul(a, F.mul(b, c)), F.mul(F.mul(a, b), c))
    assert np.array_equal(F.mul(a, b), F.mul(b, a))
    assert np.array_equal(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c)))
    assert np.array_equal(F.add(a, F.neg(a)), np.zeros(1000))
    nz = a[a != 0]
    assert np.all(F.mul(nz, F.inv(nz)) == 1)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(ORDERS), st.data())
def test_frobenius_and_trace(q, data):
    F = GF(q)
    a = data.draw(st.integers(0, q - 1))
    b = data.draw(st.integers(0, q - 1))
    p = F.p
    assert F.pow(F.add(a, b), p) == F.add(F.pow(a, p), F.pow(b, p))
    t = F.trace(a)
    assert t < p and F.pow(t, p) == t


@pytest.mark.parametrize("q,n,m", [(3, 2, 1), (3, 4, 2), (5, 3, 2), (2, 7, 3), (7, 8, 2)])
def test_root_of_unity(q, n, m):
    r = root_of_unity(GF(q), n)
    E = r.field
    assert r.m == m
    assert E.pow(r.beta, n) == 1
    assert all(E.pow(r.beta, k) != 1 for k in range(1, n))


def test_root_of_unity_examples():
    assert root_of_unity(GF(3), 2).beta == 2
    r = root_of_unity(GF(3), 4)
    assert r.beta == r.field.exp[2]
    r = root_of_unity(GF(5), 3)
    assert r.beta == r.field.exp[8]


def test_descriptor_roundtrip():
    for q in ORDERS:
        F = GF(q)
        assert parse_field(F.descriptor) == F
        assert parse_field(str(q)) == F
        assert parse_field(f"gf({q})") == F


@pytest.mark.parametrize("p,s,t", [(3, 1, 2), (2, 1, 3), (2, 2, 2), (3, 1, 3)])
def test_embedding_is_homomorphism(p, s, t):
    F, E = field_new(p, s), field_new(p, s * t)
    emb = embedding(F, E)
    a, b = np.meshgrid(np.arange(F.q), np.arange(F.q))
    assert np.array_equal(emb[F.add(a, b)], E.add(emb[a], emb[b]))
    assert np.array_equal(emb[F.mul(a, b)], E.mul(emb[a], emb[b]))
