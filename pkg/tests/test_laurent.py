import random

import pytest

from knotbounds.errors import InexactDivision, RingMismatch, ZeroPolynomial
from knotbounds.laurent import (
    RING_GF2,
    LaurentPoly2,
    homfly_unlink,
    kauffman_unlink,
)

V = LaurentPoly2({(1, 0): 1})
VINV = LaurentPoly2({(-1, 0): 1})
Z = LaurentPoly2({(0, 1): 1})
ONE = LaurentPoly2.one()


def rand_poly(rng, ring="Z"):
    terms = {}
    for _ in range(rng.randint(0, 6)):
        terms[(rng.randint(-4, 4), rng.randint(-4, 4))] = rng.randint(-9, 9)
    return LaurentPoly2(terms, ring)


def test_ring_identities():
    rng = random.Random(1)
    zero = LaurentPoly2.zero()
    for _ in range(50):
        p = rand_poly(rng)
        assert p + zero == p
        assert p * ONE == p
        assert (V - V) * p == zero


def test_difference_of_squares():
    assert (VINV - V) * (VINV + V) == LaurentPoly2({(-2, 0): 1, (2, 0): -1})


def test_ring_axioms_random_triples():
    for ring in ("Z", RING_GF2):
        rng = random.Random(7)
        for _ in range(40):
            p, q, r = (rand_poly(rng, ring) for _ in range(3))
            assert p + q == q + p
            assert p * q == q * p
            assert (p + q) + r == p + (q + r)
            assert (p * q) * r == p * (q * r)
            assert p * (q + r) == p * q + p * r


def test_ring_mismatch():
    with pytest.raises(RingMismatch):
        ONE + LaurentPoly2.one(RING_GF2)


def test_reduce_mod2_parity():
    assert LaurentPoly2({(2, 0): 2}).reduce_mod2().is_zero()
    p = LaurentPoly2({(2, 0): 2, (4, 0): -1, (2, 2): 1})
    assert p.reduce_mod2() == LaurentPoly2({(4, 0): 1, (2, 2): 1}, RING_GF2)


def test_reduce_mod2_is_ring_hom():
    rng = random.Random(13)
    for _ in range(50):
        p, q = rand_poly(rng), rand_poly(rng)
        assert (p * q).reduce_mod2() == p.reduce_mod2() * q.reduce_mod2()
        assert (p + q).reduce_mod2() == p.reduce_mod2() + q.reduce_mod2()


def test_breadth_v():
    assert ONE.breadth_v() == 0
    assert LaurentPoly2({(2, 0): 2, (4, 0): -1, (2, 2): 1}).breadth_v() == 2
    with pytest.raises(ZeroPolynomial):
        LaurentPoly2.zero().breadth_v()


def test_breadth_shift_invariant():
    rng = random.Random(3)
    for _ in range(30):
        p = rand_poly(rng)
        if p.is_zero():
            continue
        f = rng.randint(-5, 5)
        assert p.shift(-2 * f, 0).breadth_v() == p.breadth_v()


def test_substitute_sq():
    assert V.substitute_sq() == LaurentPoly2({(-2, 0): 1})
    assert LaurentPoly2({(-1, 1): 1}).substitute_sq() == LaurentPoly2({(2, 2): 1})
    rng = random.Random(5)
    for _ in range(30):
        p = rand_poly(rng)
        if p.is_zero():
            continue
        assert p.substitute_sq().breadth_v() == 2 * p.breadth_v()


def test_delta_prefactor():
    assert ONE.mul_delta_prefactor() == LaurentPoly2(
        {(-1, -1): 1, (1, -1): -1}
    )
    assert Z.mul_delta_prefactor() == VINV - V
    with pytest.raises(InexactDivision):
        LaurentPoly2({(0, -2): 1}).mul_delta_prefactor()


def test_annulus_factor():
    got = ONE.mul_annulus_factor()
    assert got == LaurentPoly2({(0, 0): 1, (-2, -2): 1, (2, -2): 1})
    assert got.breadth_v() == ONE.breadth_v() + 4


def test_breadth_additive_in_gf2_products():
    # extreme v-layers live in GF(2)[z, z^-1], an integral domain, so
    # they never cancel in a product
    rng = random.Random(11)
    checked = 0
    for _ in range(60):
        p, q = rand_poly(rng, RING_GF2), rand_poly(rng, RING_GF2)
        if p.is_zero() or q.is_zero():
            continue
        assert (p * q).breadth_v() == p.breadth_v() + q.breadth_v()
        checked += 1
    assert checked > 20


def test_unlink_closed_forms():
    assert homfly_unlink(1) == ONE
    assert homfly_unlink(2) == LaurentPoly2({(-1, -1): 1, (1, -1): -1})
    assert kauffman_unlink(2) == LaurentPoly2(
        {(1, -1): 1, (-1, -1): 1, (0, 0): -1}
    )


def test_text_round_trip():
    rng = random.Random(17)
    for ring in ("Z", RING_GF2):
        for _ in range(60):
            p = rand_poly(rng, ring)
            assert LaurentPoly2.from_text(p.to_text()) == p
    assert LaurentPoly2.from_text("0").is_zero()
    assert LaurentPoly2.from_text("1") == ONE


def test_pow_matches_repeated_mul():
    rng = random.Random(23)
    p = rand_poly(rng)
    acc = ONE
    for k in range(5):
        assert p ** k == acc
        acc = acc * p
