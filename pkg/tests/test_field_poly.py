"""Exact scalar, polynomial, rational-function, and series arithmetic."""

import random
from fractions import Fraction

import pytest

from forge.field import FieldElement
from forge.poly import (Place, Polynomial, series_inv, series_mul, series_of,
                        series_sqrt, series_val)
from forge.parse import ParseError, parse_polynomial, parse_rational
from forge.factor import (factor_squarefree, field_sqrt_rf, is_irreducible,
                          roots_in_field, square_classify,
                          squarefree_normalize)


def test_field_element_arithmetic():
    a = FieldElement(Fraction(1, 2), Fraction(3), -3)
    b = FieldElement(2, -1, -3)
    assert a + b == FieldElement(Fraction(5, 2), 2, -3)
    assert a * b == FieldElement(10, Fraction(11, 2), -3)
    assert (a / b) * b == a


def test_field_element_random_field_axioms():
    rng = random.Random(5)
    for _ in range(50):
        a = FieldElement(rng.randint(-9, 9), rng.randint(-9, 9), 5)
        b = FieldElement(rng.randint(-9, 9), rng.randint(-9, 9), 5)
        assert a + b == b + a
        assert a * b == b * a
        if b != FieldElement.of(0):
            assert (a / b) * b == a


def test_polynomial_ring_axioms():
    rng = random.Random(11)
    for _ in range(25):
        A = Polynomial([Fraction(rng.randint(-5, 5)) for _ in range(4)], "t")
        B = Polynomial([Fraction(rng.randint(-5, 5)) for _ in range(6)], "t")
        C = Polynomial([Fraction(rng.randint(-5, 5)) for _ in range(3)], "t")
        assert A * (B + C) == A * B + A * C
        assert (A * B) * C == A * (B * C)


def test_parse_round_trip():
    p = parse_polynomial("3*t^4 - t/2 + 7", "t")
    assert p[4] == 3 and p[1] == Fraction(-1, 2) and p[0] == 7
    r = parse_rational("(t^2-1)/(t+2)", "t")
    assert r.var() == "t"
    assert r.num.degree == 2 and r.den.degree == 1


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_polynomial("t^^2", "t")
    with pytest.raises((ParseError, ZeroDivisionError)):
        parse_rational("1/(t-t)", "t")


def test_rational_function_valuation():
    r = parse_rational("(t^2*(t-1))/(t+2)^3", "t")
    assert r.valuation(Place.at(0, "t")) == 2
    assert r.valuation(Place.at(1, "t")) == 1
    assert r.valuation(Place.at(-2, "t")) == -3
    assert r.valuation(Place.at(5, "t")) == 0


def test_place_degree():
    assert Place.at(0, "t").degree == 1
    assert Place(parse_polynomial("t^2+1", "t")).degree == 2
    assert Place.infinity().is_infinity()


def test_factor_squarefree():
    p = parse_polynomial("t^4 - 1", "t")
    lead, factors = factor_squarefree(p)
    assert lead == 1
    assert sorted((str(q), int(e)) for q, e in factors) \
        == [("t+1", 1), ("t-1", 1), ("t^2+1", 1)]
    prod = Polynomial([Fraction(1)], "t")
    for q, e in factors:
        for _ in range(int(e)):
            prod = prod * q
    assert prod == p


def test_is_irreducible_and_roots():
    assert is_irreducible(parse_polynomial("t^2+1", "t"))
    assert not is_irreducible(parse_polynomial("t^2-1", "t"))
    roots = roots_in_field(parse_polynomial("t^2+3", "t"), -3)
    assert len(roots) == 2
    for root, mult in roots:
        assert mult == 1
        assert root * root == FieldElement.of(-3)


def test_square_classify_and_sqrt():
    r = parse_rational("(t^2+2*t+1)/(t^2)", "t")
    c, g = square_classify(r)
    assert c == 1
    assert g * g == r
    s = field_sqrt_rf(r)
    assert s * s == r
    r3 = parse_rational("(-3*(t+1)^2)/(t^2)", "t")
    c3, _ = square_classify(r3, -3)
    assert c3 == -3
    s3 = field_sqrt_rf(r3, -3)
    assert s3 * s3 == r3


def test_squarefree_normalize():
    c, s = squarefree_normalize(FieldElement.of(18))  # 18 = 2 * 3^2
    assert (c, s) == (2, 3)


def test_series_helpers():
    r = parse_rational("(1+t)/(1-t)", "t")
    a = series_of(r, 6)
    assert series_val(a) == 0
    b = series_inv(a, 6)
    prod = series_mul(a, b, 6)
    assert prod[0] == FieldElement.of(1)
    assert all(x == FieldElement.of(0) for x in prod[1:6])
    sq = series_of(parse_rational("(1+t)^2", "t"), 6)
    root = series_sqrt(sq, 6, FieldElement.of(1))
    assert series_mul(root, root, 6) == sq
