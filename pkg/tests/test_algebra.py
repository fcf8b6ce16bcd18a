from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as hs

from deltahom.algebra import (
    LaurentPoly,
    Residue,
    derivative_at_one,
    format_poly,
    laurent_arith,
    residue_of,
    substitute_power,
)
from oracles import jones_derivative_at_one, laurent_to_sympy

half_terms = hs.dictionaries(hs.integers(-20, 20), hs.integers(-50, 50), max_size=8)
int_terms = hs.dictionaries(hs.integers(-10, 10).map(lambda e: 2 * e), hs.integers(-50, 50), max_size=8)


def poly(terms, var="t"):
    return LaurentPoly(terms, var)


@given(half_terms, half_terms)
def test_arithmetic_matches_sympy(p, q):
    a, b = poly(p), poly(q)
    x, y = laurent_to_sympy(a), laurent_to_sympy(b)
    for op, ref in (("add", x + y), ("sub", x - y), ("mul", x * y)):
        got = laurent_to_sympy(laurent_arith(a, b, op))
        assert sympy.expand(got - ref) == 0


@given(int_terms, hs.integers(0, 5))
def test_derivative_matches_sympy(p, k):
    a = poly(p)
    assert derivative_at_one(a, k) == jones_derivative_at_one(laurent_to_sympy(a), k)


def test_derivative_rejects_half_exponents():
    with pytest.raises(ValueError):
        derivative_at_one(LaurentPoly.monomial(Fraction(1, 2)), 1)


def test_derivative_examples():
    # t + t^3 - t^4: third derivative 0 + 6 - 24
    p = LaurentPoly.from_exponents({1: 1, 3: 1, 4: -1})
    assert derivative_at_one(p, 3) == -18
    assert derivative_at_one(p, 0) == 1


@given(hs.integers(-10**6, 10**6), hs.integers(-10**6, 10**6), hs.integers(-50, 50))
def test_residue_equality_iff_divisible(a, b, m):
    same = residue_of(a, m) == residue_of(b, m)
    assert same == ((a - b) % m == 0 if m else a == b)


def test_residue_normalization():
    assert residue_of(-3, 5) == Residue(2, 5)
    assert residue_of(-3, -5) == Residue(2, 5)
    assert residue_of(-3, 0) == Residue(-3, 0)
    assert str(residue_of(4, 0)) == "4 (mod 0)"
    with pytest.raises(ValueError):
        Residue(7, 5)


@given(int_terms, hs.sampled_from([1, -1, 2, -2, 4, -4, Fraction(1, 4), Fraction(-1, 4)]))
def test_substitute_round_trip(p, k):
    a = poly(p)
    if abs(k) < 1:
        a = substitute_power(a, 2, "t")
    assert substitute_power(substitute_power(a, k, "u"), 1 / Fraction(k), "t") == a


def test_substitute_rejects_non_half_results():
    with pytest.raises(ValueError):
        substitute_power(LaurentPoly.monomial(1), Fraction(1, 4), "A")
    with pytest.raises(ValueError):
        substitute_power(LaurentPoly.monomial(1), 0, "A")


@pytest.mark.parametrize(
    "terms,text",
    [
        ({-4: -1, -3: 1, -1: 1}, "-t^-4 + t^-3 + t^-1"),
        ({Fraction(3, 2): 1}, "t^(3/2)"),
        ({Fraction(-1, 2): -1, Fraction(1, 2): -1}, "-t^(-1/2) - t^(1/2)"),
        ({0: 1, 1: -2}, "1 - 2t"),
        ({}, "0"),
    ],
)
def test_format(terms, text):
    assert format_poly(LaurentPoly.from_exponents(terms)) == text


def test_format_other_variable():
    assert str(LaurentPoly.from_exponents({0: 1, 2: 1}, "z")) == "1 + z^2"


def test_variable_mismatch():
    with pytest.raises(ValueError):
        laurent_arith(LaurentPoly({}, "t"), LaurentPoly({}, "z"), "add")


def test_big_coefficients_stay_exact():
    p = LaurentPoly.from_exponents({0: 3, 1: 1})
    assert (p ** 80).coeff(0) == 3 ** 80
