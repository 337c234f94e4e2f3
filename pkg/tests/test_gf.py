import itertools

import pytest

from pulseforge import gf


def _monic_quadratic_is_irreducible(c1, c0, p):
    # oracle: a quadratic is reducible over GF(p) iff it has a root there
    return all((x * x + c1 * x + c0) % p for x in range(p))


def test_primes():
    assert [n for n in range(2, 30) if gf.is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert not gf.is_prime(1)
    assert gf.next_prime(5) == 5
    assert gf.next_prime(90) == 97


def test_prime_power_detection():
    assert gf.is_prime_power(2) == (2, 1)
    assert gf.is_prime_power(4) == (2, 2)
    assert gf.is_prime_power(8) == (2, 3)
    assert gf.is_prime_power(81) == (3, 4)
    assert gf.is_prime_power(7) == (7, 1)
    assert gf.is_prime_power(1) is None
    assert gf.is_prime_power(12) is None
    assert gf.is_prime_power(100) is None


def test_gf4_modulus_is_the_unique_irreducible_quadratic():
    spec = gf.field_new(2, 2)
    assert spec.modulus == (1, 1, 1)
    # oracle: x^2+x+1 is the only monic irreducible quadratic over GF(2)
    irr = [(c1, c0) for c1, c0 in itertools.product(range(2), repeat=2)
           if _monic_quadratic_is_irreducible(c1, c0, 2)]
    assert irr == [(1, 1)]


def test_gf9_modulus_lex_smallest():
    spec = gf.field_new(3, 2)
    assert spec.modulus == (1, 0, 1)
    assert _monic_quadratic_is_irreducible(0, 1, 3)
    # nothing smaller works: x^2 and x^2 shifted by smaller constants are reducible
    assert not _monic_quadratic_is_irreducible(0, 0, 3)


def test_gf8_modulus():
    assert gf.field_new(2, 3).modulus == (1, 0, 1, 1)


def test_gf4_omega_relations():
    spec = gf.field_new(2, 2)
    w = gf.element(spec, 2)
    w2 = gf.mul(w, w)
    assert w2 == gf.element(spec, 3)          # 1 + w under the encoding
    assert w2.coeffs == (1, 1)
    assert gf.mul(w2, w) == gf.one(spec)      # w^3 = 1


def test_enumeration_order():
    f2 = gf.field_new(2, 1)
    assert [e.value for e in gf.elements(f2)] == [0, 1]
    f4 = gf.field_new(2, 2)
    es = gf.elements(f4)
    assert [e.coeffs for e in es] == [(0, 0), (1, 0), (0, 1), (1, 1)]
    assert es[0] == gf.zero(f4) and es[1] == gf.one(f4)
    f9 = gf.field_new(3, 2)
    e9 = gf.elements(f9)
    assert len(set(e9)) == 9
    assert all(e.value == i for i, e in enumerate(e9))


@pytest.mark.parametrize("p,k", [(2, 1), (3, 1), (2, 2), (5, 1), (2, 3), (3, 2)])
def test_field_axioms_exhaustive(p, k):
    spec = gf.field_new(p, k)
    es = gf.elements(spec)
    z, o = gf.zero(spec), gf.one(spec)
    for a in es:
        assert a + z == a and a * o == a
        assert a + (-a) == z
        if a:
            assert gf.inv(a) * a == o
    for a, b in itertools.product(es, repeat=2):
        assert a + b == b + a
        assert a * b == b * a
    for a, b, c in itertools.product(es, repeat=3):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


@pytest.mark.parametrize("p,k", [(2, 4), (5, 2), (3, 3), (3, 4), (7, 2)])
def test_field_axioms_sampled(p, k):
    import random

    rng = random.Random(0xC0FFEE)
    spec = gf.field_new(p, k)
    q = spec.order
    o = gf.one(spec)
    for _ in range(200):
        a = gf.element(spec, rng.randrange(q))
        b = gf.element(spec, rng.randrange(q))
        c = gf.element(spec, rng.randrange(q))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        if a:
            assert gf.inv(a) * a == o


@pytest.mark.parametrize("q", [4, 8, 9, 27, 81])
def test_multiplicative_group_cyclic(q):
    spec = gf.field_for_order(q)
    o = gf.one(spec)

    def order(a):
        n, x = 1, a
        while x != o:
            x = gf.mul(x, a)
            n += 1
        return n

    assert any(order(a) == q - 1 for a in gf.elements(spec)[1:])


def test_errors():
    with pytest.raises(ValueError):
        gf.field_new(4, 1)
    with pytest.raises(ValueError):
        gf.field_new(2, 0)
    with pytest.raises(ValueError):
        gf.field_new(2, 17)
    with pytest.raises(ValueError):
        gf.field_for_order(6)
    f4 = gf.field_new(2, 2)
    f9 = gf.field_new(3, 2)
    with pytest.raises(ZeroDivisionError):
        gf.inv(gf.zero(f4))
    with pytest.raises(ValueError):
        gf.add(gf.one(f4), gf.one(f9))
    with pytest.raises(ValueError):
        gf.element(f4, 4)
