"""Sections: group law, intersections, components, heights, NS models."""

from fractions import Fraction

import pytest

from forge.poly import Place
from forge.surface import Surface
from forge.section import (NSModel, Section, component_at, height,
                           height_pairing, height_report, intersect,
                           intersect_places, intersect_zero, tau_check,
                           trivial_lattice)


def make_rank_one():
    S = Surface.from_string("y^2 = x^3 - x + (1 - t^3 + t)")
    return S, Section(S, "t", "1")


def test_verify_and_zero_section():
    S, P = make_rank_one()
    assert P.verify()
    bad = Section(S, "t", "2")
    assert not bad.verify()
    assert Section.zero_section(S).zero


def test_group_law():
    S, P = make_rank_one()
    P2 = P + P
    assert P2.verify()
    assert (P - P).zero
    assert ((P2 + P) - P2).x == P.x
    minus = -P
    assert minus.verify() and minus.x == P.x and minus.y == -P.y


def test_torsion_order():
    S = Surface.from_string("y^2 = x^3 + x^2 + s*x", var="s")
    T = Section(S, "0", "0")
    assert T.torsion_order() == 2
    _, P = make_rank_one()
    assert P.torsion_order(bound=3) is None  # non-torsion


def test_heights_and_pairing():
    S, P = make_rank_one()
    assert height(P) == 1
    assert height(P + P) == 4
    assert height_pairing(P, P + P) == 2
    rep = height_report(P)
    assert rep["height"] == 1
    assert rep["naive"] - sum(rep["corrections"].values()) == 1


def test_intersect_zero_and_each_other():
    S, P = make_rank_one()
    assert intersect_zero(P) == 0  # polynomial coordinates: disjoint from O
    P2 = P + P
    n = intersect(P, P2)
    assert n >= 0
    places = intersect_places(P, P2)
    assert sum(w for _, w in places) == n


def test_component_at():
    S = Surface.from_string("y^2 = x^3 + x^2 + s*x", var="s")
    T = Section(S, "0", "0")
    lbl = component_at(T, Place.at(0, "s"))
    assert not lbl.is_identity()  # two-torsion hits the far component of I2


def test_trivial_lattice():
    S = Surface.from_string("y^2 = x^3 + x^2 + s*x", var="s")
    T = trivial_lattice(S)
    # U + E7(-1) + A1(-1): rank 10, disc -4
    assert T.rank == 10
    assert T.disc() == -4


def test_ns_model_rank_one():
    S, P = make_rank_one()
    ns = NSModel(S, [P])
    assert ns.rank == 2 + sum(
        f.components - 1 for f in S.classify().fibers if f.is_reducible()) + 1
    assert ns.check_psi_heights()
    assert ns.check_disc_relation()
    assert ns.mwl_gram() == [[Fraction(1)]]


def test_ns_model_with_torsion():
    X = Surface.from_string("w^2 = x^3 + t^2*x^2 + t^3*(t-(-9/4))*(t-24)*x")
    Q = Section(X, "36*t+81", "-3*(4*t+9)*(t^2-12*t-54)/2")
    ns = NSModel(X, [Q], torsion_order=2)
    assert ns.rank == 19
    assert abs(ns.disc()) == 32
    assert ns.check_disc_relation()


def test_tau_check_pairs():
    for M, N in ((1, 3), (2, 5), (3, 7)):
        r = tau_check(M, N)
        assert r["pass"]
        assert r["anti_invariant"] and r["involutive"] and r["isometry"]
