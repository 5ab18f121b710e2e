"""Base change, twisting and fixed-point-free involution checks."""

import pytest

from forge.poly import Place, Polynomial, RationalFunction
from forge.section import Section
from forge.surface import Surface
from forge.twist import (BaseChangeError, QuadraticBaseChange, TwistPackage,
                         enriques_check, m1_family, pullback, twist)


def test_base_change_normal_form():
    bc = QuadraticBaseChange("t^2")
    assert str(bc.deck) == "-t"
    assert sorted(str(p) for p in bc.ramification) == ["(t)", "infinity"]
    bc2 = QuadraticBaseChange("(t^2+1)/t")
    # deck is an involution
    assert bc2.deck.compose(bc2.deck) == RationalFunction(Polynomial.gen("t"))


def test_base_change_rejects():
    with pytest.raises(BaseChangeError):
        QuadraticBaseChange("t^3")
    with pytest.raises(BaseChangeError):
        QuadraticBaseChange("(t^2+2*t+1)/(t+1)")  # degree drops: not separable


def test_pullback_euler_doubles_off_branch():
    S = Surface.from_string("y^2 = x^3 + x^2 + t^2*(t-1)*x")
    X = pullback(S, "t^2 + 2")  # branch points t=2, infinity
    assert X.classify().euler_total == 24


def test_pullback_rejects_star_branch_fiber():
    S = Surface.from_string("y^2 = x^3 + x^2 + s*x", var="s")  # III* at infinity
    with pytest.raises(BaseChangeError):
        pullback(S, "s^2")


TWIST_PAIRS = [
    ("y^2 = x^3 + x + 1 + t", "I0", "I0*"),
    ("y^2 = x^3 + x^2 + t^1", "I1", "I1*"),
    ("y^2 = x^3 + x^2 + t^2", "I2", "I2*"),
    ("y^2 = x^3 + x^2 + t^3", "I3", "I3*"),
    ("y^2 = x^3 + t^3*x + t", "II", "IV*"),
    ("y^2 = x^3 + t*x + t^2", "III", "III*"),
    ("y^2 = x^3 + t^2*x + t^2", "IV", "II*"),
]


@pytest.mark.parametrize("model,before,after", TWIST_PAIRS)
def test_twist_table(model, before, after):
    S = Surface.from_string(model)
    pl = Place.at(0, "t")
    assert S.fiber_at(pl).name == before
    T = twist(S, "t")
    assert T.fiber_at(pl).name == after
    # twisting twice restores the type
    assert twist(T, "t").fiber_at(pl).name == before


def test_twist_package_transfer():
    res = m1_family("t^4+2", "t^2+t", "t^2+1")
    assert res.Pprime.verify() and res.P.verify()
    pkg = res.package
    assert pkg.X.classify().kind == "K3"
    P2 = pkg.transfer_section(res.Pprime + res.Pprime)
    assert P2.verify()
    assert P2.x == (res.P + res.P).x


def test_enriques_generic_free():
    res = m1_family("t^4+2", "t^2+t", "t^2+1")
    assert res.report.free
    assert all(ok for ok, _why in res.report.verdicts.values())
    assert all(not hit for hit in res.loci.values())


def test_enriques_locus_not_free():
    res = m1_family("t^4+t^3+t^2+t-3", "t^2+t+1", "t^2+2*t+5")
    assert res.loci["a0 = -3 u0^2"]
    assert not res.report.free
    fix = Place.at(0, "t")
    ok, why = res.report.verdicts[fix]
    assert not ok
    assert not res.package.X.fiber_at(fix).is_smooth()


def test_enriques_rejects_identity_component():
    # P passes through the node of the fixed I2 fibre on the identity side:
    # translation by such a section cannot be fixed point free.
    res = m1_family("t^4+t^3+t^2+t-3", "t^2+t+1", "t^2+2*t+5")
    assert "I2" in res.report.verdicts[Place.at(0, "t")][1]


def test_enriques_smooth_fixed_fibers():
    # A section with no fixed-fiber obstruction: both ramification fibers smooth.
    res = m1_family("t^4+2", "t^2+t", "t^2+1")
    X = res.package.X
    assert X.fiber_at(Place.at(0, "t")).is_smooth()
    assert X.fiber_at(Place.infinity()).is_smooth()
    # anti-invariance of the transferred section under the deck map
    rep = enriques_check(X, res.P, deck=res.package.deck)
    assert rep.free
