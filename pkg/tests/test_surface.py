"""Kodaira classification, minimal models, and surface invariants."""

import random
from fractions import Fraction

import pytest

from forge.poly import Place, Polynomial
from forge.surface import Surface, apply_involution
from forge.parse import parse_rational


def test_classify_rational_surface():
    S = Surface.from_string("y^2 = x^3 + x^2 + s*x", var="s")
    summary = S.classify()
    assert S.chi == 1
    assert summary.kind == "rational"
    assert summary.euler_total == 12
    fibers = {str(f.place): f.name for f in summary.fibers
              if not f.is_smooth()}
    assert fibers == {"(s)": "I2", "(s-1/4)": "I1", "infinity": "III*"}


def test_classify_k3():
    S = Surface.from_string("y^2 = x^3 + 2*t^4*x + t^5*(t^2+3*t+1)")
    summary = S.classify()
    assert S.chi == 2
    assert summary.kind == "K3"
    assert summary.euler_total == 24


def test_fiber_fields():
    S = Surface.from_string("y^2 = x^3 + x^2 + s*x", var="s")
    f = S.fiber_at(Place.at(0, "s"))
    assert f.symbol == "In" and f.n == 2 and f.name == "I2"
    assert f.euler == 2
    assert f.root_lattice == "A1"
    g = S.fiber_at(Place.infinity())
    assert g.name == "III*" and g.euler == 9 and g.root_lattice == "E7"
    assert g.components == 8


def test_degree_two_place_counts_twice():
    # conjugate I1 fibers over an irreducible quadratic count with degree
    S = Surface.from_string("y^2 = x^3 + 2*t^4*x + t^5*(t^2+3*t+1)")
    deg4 = [f for f in S.classify().fibers if f.place.degree == 4]
    assert len(deg4) == 1 and deg4[0].name == "I1"
    # the total weights each fiber by the degree of its place
    assert sum(f.euler * f.place.degree for f in S.classify().fibers) == 24


def test_euler_conservation_small_random():
    rng = random.Random(2)
    checked = 0
    while checked < 15:
        A = Polynomial([Fraction(rng.randint(-4, 4))
                        for _ in range(rng.randint(1, 5))], "t")
        B = Polynomial([Fraction(rng.randint(-4, 4))
                        for _ in range(rng.randint(1, 7))], "t")
        try:
            S = Surface.from_short(A, B)
            summary = S.classify()
        except Exception:
            continue
        assert summary.euler_total == 12 * S.chi
        checked += 1


def test_j_invariant_isotrivial():
    S = Surface.from_string("y^2 = x^3 + t*x")  # j = 1728 everywhere
    assert S.is_isotrivial()
    T = Surface.from_string("y^2 = x^3 + x^2 + t")
    assert not T.is_isotrivial()


def test_apply_involution_detects_symmetry():
    S = Surface.from_string("y^2 = x^3 + 2*t^4*x + t^5*(t^2+3*t+1)")
    assert apply_involution(S, parse_rational("1/t^4"),
                            parse_rational("1/t^6"),
                            parse_rational("1/t"))
    # a wrong scaling is rejected
    assert not apply_involution(S, parse_rational("1/t^2"),
                                parse_rational("1/t^3"),
                                parse_rational("1/t"))


def test_non_minimal_input_is_minimalized():
    # (A, B) -> (u^4 A, u^6 B) describes the same surface
    S = Surface.from_string("y^2 = x^3 + x^2 + t")
    u = Polynomial([0, 1], "t")
    T = Surface.from_short(S.A * u ** 4, S.B * u ** 6)
    assert T.A == S.A and T.B == S.B


def test_reject_degenerate_model():
    with pytest.raises(Exception):
        Surface.from_string("y^2 = x^3 + t^2*x^2")  # identically singular
