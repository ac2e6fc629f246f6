import itertools
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from dotgraphs.ring import (
    FiniteField,
    ModularRing,
    NoInverse,
    add,
    factorize,
    find_irreducible,
    inverse,
    is_irreducible,
    make_ring,
    mul,
    neg,
    parse_ring,
    sqrt_of_minus_one,
    totient,
    units,
    zero_divisors,
)
from dotgraphs.theorems import sqrt_minus_one_count


def _prime_powers(limit):
    for q in range(2, limit + 1):
        f = factorize(q)
        if f.r == 1:
            yield f.pairs[0]


SMALL_FIELDS = [FiniteField(p, d) for p, d in _prime_powers(64)]


# -- construction ----------------------------------------------------------


def test_gf4_modulus_is_x2_x_1():
    assert FiniteField(2, 2).modulus == (1, 1, 1)
    assert make_ring("gf", 2, 2).modulus == (1, 1, 1)


def test_prime_field_modulus_is_x():
    f = make_ring("gf", 5, 1)
    assert f.modulus == (0, 1)
    assert f.order == 5


def _has_root(coeffs, p):
    return any(sum(c * x**i for i, c in enumerate(coeffs)) % p == 0 for x in range(p))


def test_gf9_modulus_is_smallest_irreducible_quadratic():
    # oracle: every monic quadratic over Z_3, in (c0, c1) lexicographic order
    irreducible = [(c0, c1, 1) for c0, c1 in itertools.product(range(3), repeat=2)
                   if not _has_root((c0, c1, 1), 3)]
    assert irreducible[0] == (1, 0, 1)
    assert FiniteField(3, 2).modulus == (1, 0, 1)


@pytest.mark.parametrize("p,d", [(2, 4), (3, 4), (2, 5), (2, 6)])
def test_higher_degree_modulus_has_no_factor(p, d):
    m = find_irreducible(p, d)
    # oracle: the quotient ring must be a field, i.e. no zero divisors
    f = FiniteField(p, d, m)
    nonzero = [x for x in f.elements if any(x)]
    assert all(any(y) for y in (f.mul(a, b) for a in nonzero[:20] for b in nonzero))


def test_reducible_modulus_rejected():
    with pytest.raises(ValueError):
        FiniteField(2, 2, (1, 0, 1))  # (X+1)^2
    assert not is_irreducible((1, 0, 1, 0, 1), 2)  # (X^2+X+1)^2


@pytest.mark.parametrize("bad", [lambda: make_ring("gf", 4, 1), lambda: make_ring("gf", 9, 2),
                                 lambda: make_ring("zn", 1), lambda: ModularRing(0)])
def test_invalid_requests(bad):
    with pytest.raises(ValueError):
        bad()


def test_parse_ring():
    assert parse_ring("zn:10") == ModularRing(10)
    assert parse_ring("gf:2:3") == FiniteField(2, 3)
    for bad in ("zn", "zn:x", "gf:2", "q:3", "zn:1"):
        with pytest.raises(ValueError):
            parse_ring(bad)


# -- arithmetic examples -----------------------------------------------------


def test_examples_modular():
    z5, z8 = ModularRing(5), ModularRing(8)
    assert mul(z5, 2, 4) == 3
    assert neg(z8, 3) == 5
    assert add(z8, 7, 3) == 2
    assert inverse(z5, 2) == 3
    with pytest.raises(NoInverse):
        inverse(z8, 4)


def test_examples_gf4():
    f = FiniteField(2, 2)
    v = (0, 1)
    assert f.mul(v, v) == (1, 1)  # X^2 = X + 1 mod X^2+X+1
    assert f.inverse(v) == (1, 1)
    assert f.mul(v, (1, 1)) == f.one
    with pytest.raises(NoInverse):
        f.inverse(f.zero)


def test_labels():
    f = FiniteField(3, 2)
    assert f.label((0, 0)) == "0"
    assert f.label((1, 1)) == "v + 1"
    assert f.label((2, 2)) == "2v + 2"
    assert FiniteField(2, 3).label((0, 1, 1)) == "v^2 + v"
    assert FiniteField(7, 1).label((4,)) == "4"
    assert ModularRing(9).label(4) == "4"


# -- units and zero divisors -------------------------------------------------


def test_units_examples():
    assert units(ModularRing(10)) == [1, 3, 7, 9]
    assert len(units(ModularRing(20))) == 8
    gf4 = FiniteField(2, 2)
    assert len(units(gf4)) == 3
    assert zero_divisors(gf4) == [gf4.zero]


@pytest.mark.parametrize("n", range(2, 501))
def test_units_count_is_totient(n):
    brute = sum(1 for a in range(1, n + 1) if gcd(a, n) == 1)
    assert totient(n) == brute
    assert len(units(ModularRing(n))) == brute


def test_totient_and_factorize_examples():
    assert totient(34) == 16
    assert all(totient(p) == p - 1 for p in (2, 3, 5, 7, 97, 101))
    f = factorize(20)
    assert f.pairs == ((2, 2), (5, 1)) and f.r == 2 and f.value() == 20


@given(st.integers(2, 10**6))
def test_factorize_reconstructs(n):
    f = factorize(n)
    assert f.value() == n
    ps = f.primes
    assert list(ps) == sorted(set(ps))
    assert all(all(p % d for d in range(2, int(p**0.5) + 1)) for p in ps)


RINGS = [ModularRing(n) for n in (2, 6, 8, 9, 12, 15, 30)] + SMALL_FIELDS[:12]


@pytest.mark.parametrize("r", RINGS, ids=str)
def test_unit_zero_divisor_partition(r):
    u, z = r.units(), r.zero_divisors()
    assert sorted(u + z) == list(r.elements)
    assert not set(u) & set(z)
    for x in r.elements:
        kills = any(r.mul(x, y) == r.zero for y in r.elements if y != r.zero)
        assert kills == (x in z)
    for x in u:
        assert r.mul(x, r.inverse(x)) == r.one


@st.composite
def ring_and_triple(draw):
    r = draw(st.sampled_from(RINGS))
    els = st.sampled_from(r.elements)
    return r, draw(els), draw(els), draw(els)


@settings(max_examples=300)
@given(ring_and_triple())
def test_ring_axioms(rt):
    r, x, y, z = rt
    assert r.mul(x, y) == r.mul(y, x)
    assert r.mul(r.mul(x, y), z) == r.mul(x, r.mul(y, z))
    assert r.add(x, y) == r.add(y, x)
    assert r.mul(x, r.add(y, z)) == r.add(r.mul(x, y), r.mul(x, z))
    assert r.add(x, r.neg(x)) == r.zero


@pytest.mark.parametrize("f", SMALL_FIELDS, ids=str)
def test_field_validity(f):
    nonzero = [x for x in f.elements if any(x)]
    for x in nonzero:
        assert f.mul(x, f.inverse(x)) == f.one

    def order(x):
        k, y = 1, x
        while y != f.one:
            y, k = f.mul(y, x), k + 1
        return k

    assert max(order(x) for x in nonzero) == f.q - 1


def test_tables_agree_with_ops():
    f = FiniteField(3, 2)
    for i, x in enumerate(f.elements):
        for j, y in enumerate(f.elements):
            assert f.elements[f.mul_table[i, j]] == f.mul(x, y)
            assert f.elements[f.add_table[i, j]] == f.add(x, y)


# -- square roots of -1 --------------------------------------------------------


def test_sqrt_examples():
    assert sqrt_of_minus_one(4) == []
    assert sqrt_of_minus_one(5) == [2, 3]
    assert sqrt_of_minus_one(2) == [1]
    assert sqrt_of_minus_one(10) == [3, 7]
    roots65 = sqrt_of_minus_one(65)
    assert len(roots65) == 4
    assert roots65 == [a for a in range(65) if a * a % 65 == 64]


@pytest.mark.parametrize("n", range(2, 501))
def test_sqrt_count_matches_closed_form(n):
    roots = sqrt_of_minus_one(n)
    assert len(roots) == sqrt_minus_one_count(n)
    assert roots == sorted(roots)
    assert all(gcd(a, n) == 1 and (a * a + 1) % n == 0 for a in roots)
