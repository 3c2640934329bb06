from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from glcoh.lang import parse_polynomial
from glcoh.poly import FieldSpec, MonomialOrder, PolynomialRing, monomials_of_degree

from strategies import ambient, polynomial


S = ambient(3)
x, y, z = S.gens


@pytest.mark.parametrize("p", [4, 1, 100, 2**31 + 11])
def test_fieldspec_rejects_non_primes_and_large(p):
    with pytest.raises(ValueError):
        FieldSpec(p)


def test_fieldspec_kinds():
    assert FieldSpec(101).kind == "prime-field"
    assert FieldSpec.rationals().kind == "rationals"
    assert str(FieldSpec(0)) == "QQ" and str(FieldSpec(7)) == "GF(7)"


def test_prime_field_inverse_and_wraparound():
    F = FieldSpec(101)
    assert F(-1) == 100
    assert F(Fraction(1, 2)) * 2 % 101 == 1
    assert all(c * F.inv(c) % 101 == 1 for c in range(1, 101))


def test_rationals_are_exact():
    Q = PolynomialRing(FieldSpec(0), ("x", "y"))
    a, b = Q.gens
    f = (a * Fraction(1, 3) + b) * 3
    assert f == a + b * 3
    assert all(isinstance(c, Fraction) for c in f.terms.values())


@pytest.mark.parametrize("order, bigger, smaller", [
    ("lex", "x*z^2", "y^3"),
    ("graded-lex", "x*z^2", "y^3"),
    ("grevlex", "y^3", "x*z^2"),
    ("grevlex", "x^2", "y^2"),
    ("lex", "x", "y^5"),
    ("grevlex", "y^5", "x"),
])
def test_monomial_orders(order, bigger, smaller):
    R = PolynomialRing(FieldSpec(101), ("x", "y", "z"), MonomialOrder(order))
    f = R(bigger) + R(smaller)
    assert f.leading_monomial == R(bigger).leading_monomial


def test_unknown_order():
    with pytest.raises(ValueError):
        MonomialOrder("revlex")


@pytest.mark.parametrize("n, d, count", [(1, 4, 1), (2, 2, 3), (3, 2, 6), (3, 3, 10), (4, 0, 1)])
def test_monomials_of_degree_counts(n, d, count):
    mons = monomials_of_degree(n, d)
    assert len(mons) == count == len(set(mons))
    assert all(sum(e) == d for e in mons)


def test_parse_examples():
    assert parse_polynomial("x*y + y^2", S) == x * y + y ** 2
    assert parse_polynomial("-(x - 2*y)^2", S) == -(x * x - x * y * 4 + y * y * 4)
    assert str(x ** 2 * y - z * 3) == "x^2*y - 3*z"


def test_degree_and_homogeneity():
    assert (x * y + z ** 2).is_homogeneous()
    assert not (x + y ** 2).is_homogeneous()
    assert S.zero().degree() == -1 and (x ** 3 + y).degree() == 3


@given(polynomial(S), polynomial(S), polynomial(S))
def test_ring_axioms(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == S.zero()
    assert f * S.one() == f


@given(polynomial(S))
def test_terms_are_canonical(f):
    assert all(c != 0 for c in f.terms.values())
    keys = [S.order.key(e) for e, _ in f.sorted_terms()]
    assert keys == sorted(keys, reverse=True) and len(set(keys)) == len(keys)


@given(polynomial(S))
def test_print_parse_round_trip(f):
    assert parse_polynomial(str(f), S) == f


@given(polynomial(S), st.integers(0, 3))
def test_power_matches_repeated_product(f, k):
    g = S.one()
    for _ in range(k):
        g = g * f
    assert f ** k == g
