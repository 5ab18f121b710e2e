"""Acceptance gate: every criterion is exact (zero tolerance)."""

import random
import time
from fractions import Fraction

import pytest

from forge import (IntLattice, LatticeEmbedding, NSModel, Section, Surface,
                   apply_involution, brauer_witness, component_at,
                   discriminant_group, figure_star_lattice, field_sqrt_rf,
                   height, height_pairing, intersect, intersect_places,
                   intersect_zero, is_primitive, m1_family, named_lattice,
                   odd_M_obstruction, overlattice, parse_model,
                   parse_rational, smith_normal_form, square_classify,
                   tau_check, twist)
from forge.intlat import mat_det, mat_mul, transpose
from forge.poly import Place, Polynomial
from forge.section import intersect_zero as P_dot_O


# ---------------------------------------------------------------------------
# 1. Fiber classification of the three named models
# ---------------------------------------------------------------------------

def test_criterion_1_named_configurations():
    start = time.perf_counter()
    S = Surface.from_string("y^2 = x^3 + x^2 + s*x", var="s")
    fibers = {str(f.place): f.name for f in S.classify().fibers
              if not f.is_smooth()}
    assert fibers == {"infinity": "III*", "(s)": "I2", "(s-1/4)": "I1"}
    assert time.perf_counter() - start < 1.0

    start = time.perf_counter()
    X = Surface.from_string("y^2 = x^3 + 2*t^4*x + t^5*(t^2+3*t+1)")
    summary = X.classify()
    stars = {str(f.place) for f in summary.fibers if f.name == "II*"}
    assert stars == {"(t)", "infinity"}
    others = [f for f in summary.fibers
              if not f.is_smooth() and f.name != "II*"]
    assert all(f.name == "I1" for f in others)
    assert summary.euler_total == 24
    assert time.perf_counter() - start < 1.0

    start = time.perf_counter()
    B = Surface.from_string(
        "w^2 = x*(x^2 - 8*(2+3-2)*t^2*x + 16*(2*t+3)*(3*t+2)*t^3)")
    reducible = sorted(f.name for f in B.classify().fibers
                       if f.is_reducible())
    assert reducible == ["I2", "I2", "III*", "III*"]
    assert time.perf_counter() - start < 1.0


# ---------------------------------------------------------------------------
# 2. Euler conservation on 100 random minimal models
# ---------------------------------------------------------------------------

def test_criterion_2_euler_conservation():
    rng = random.Random(20260826)
    start = time.perf_counter()
    checked = 0
    while checked < 100:
        A = Polynomial([Fraction(rng.randint(-6, 6))
                        for _ in range(rng.randint(1, 9))], "t")
        B = Polynomial([Fraction(rng.randint(-6, 6))
                        for _ in range(rng.randint(1, 13))], "t")
        try:
            S = Surface.from_short(A, B)
            summary = S.classify()
        except Exception:
            # degenerate draw (zero discriminant or not minimal at
            # infinity): not a minimal model, resample
            continue
        assert summary.euler_total == 12 * S.chi
        checked += 1
    assert time.perf_counter() - start < 30.0


# ---------------------------------------------------------------------------
# 3. Twist table
# ---------------------------------------------------------------------------

TWIST_CASES = [
    ("y^2 = x^3 + x + 1 + t", "I0", "I0*"),
    ("y^2 = x^3 + x^2 + t", "I1", "I1*"),
    ("y^2 = x^3 + x^2 + t^2", "I2", "I2*"),
    ("y^2 = x^3 + x^2 + t^3", "I3", "I3*"),
    ("y^2 = x^3 + x^2 + t^5", "I5", "I5*"),
    ("y^2 = x^3 + t^3*x + t", "II", "IV*"),
    ("y^2 = x^3 + t*x + t^2", "III", "III*"),
    ("y^2 = x^3 + t^2*x + t^2", "IV", "II*"),
]


@pytest.mark.parametrize("model,before,after", TWIST_CASES)
def test_criterion_3_twist_table(model, before, after):
    S = Surface.from_string(model)
    p0 = Place.at(0, "t")
    assert S.fiber_at(p0).name == before
    T = twist(S, "t")
    assert T.fiber_at(p0).name == after
    # twisting twice restores the original type
    assert twist(T, "t").fiber_at(p0).name == before


def test_criterion_3_random_ramification():
    rng = random.Random(99)
    for _ in range(5):
        c = rng.randint(1, 5)
        S = Surface.from_string(f"y^2 = x^3 + x^2 + {c}*t^2")
        T = twist(S, "t")
        assert S.fiber_at(Place.at(0, "t")).name == "I2"
        assert T.fiber_at(Place.at(0, "t")).name == "I2*"


# ---------------------------------------------------------------------------
# 4. Free-involution family: generic freeness and the four degeneracy loci
# ---------------------------------------------------------------------------

def test_criterion_4_generic_members_free():
    rng = random.Random(4)
    start = time.perf_counter()
    done = 0
    while done < 20:
        A = Polynomial([Fraction(rng.randint(-4, 4)) for _ in range(5)], "t")
        U = Polynomial([Fraction(rng.randint(-4, 4)) for _ in range(3)], "t")
        V = Polynomial([Fraction(rng.randint(-4, 4)) for _ in range(3)], "t")
        a0, u0, a4, u2 = A[0], U[0], A[4], U[2]
        if (a0 == -3 * u0 * u0 or 4 * a0 == -3 * u0 * u0
                or a4 == -3 * u2 * u2 or 4 * a4 == -3 * u2 * u2):
            continue
        if U.degree < 0 or V.degree < 0:
            continue
        try:
            res = m1_family(A, U, V)
        except ValueError:
            continue
        assert res.Pprime.verify()
        assert res.report.free
        assert not any(res.loci.values())
        assert P_dot_O(res.P) == 0
        done += 1
    assert time.perf_counter() - start < 10.0


LOCI_CASES = [
    ("a0 = -3 u0^2", "t^4+t^3+t^2+t-3", "t^2+t+1", "t^2+2*t+5", "(t)"),
    ("a0 = -3 u0^2 / 4", "t^4+t^3+t^2+t-3/4", "t^2+t+1", "t^2+2*t+5", "(t)"),
    ("a4 = -3 u2^2", "-3*t^4+t^3+t^2+t+1", "t^2+t+1", "t^2+2*t+5",
     "infinity"),
    ("a4 = -3 u2^2 / 4", "(-3/4)*t^4+t^3+t^2+t+1", "t^2+t+1", "t^2+2*t+5",
     "infinity"),
]


@pytest.mark.parametrize("locus,A,U,V,bad_place", LOCI_CASES)
def test_criterion_4_degeneracy_loci(locus, A, U, V, bad_place):
    res = m1_family(A, U, V)
    assert res.loci[locus]
    pl = (Place.infinity() if bad_place == "infinity"
          else Place.at(0, res.package.X.var))
    assert not res.package.X.fiber_at(pl).is_smooth()
    assert not res.report.free
    assert not res.report.verdicts[pl][0]


# ---------------------------------------------------------------------------
# 5. Explicit section at q = 2
# ---------------------------------------------------------------------------

def test_criterion_5_explicit_section():
    X = Surface.from_string("w^2 = x^3 + t^2*x^2 + t^3*(t-(-9/4))*(t-24)*x")
    Q = Section(X, "36*t+81", "-3*(4*t+9)*(t^2-12*t-54)/2")
    assert Q.verify()
    assert intersect_zero(Q) == 0
    assert height(Q) == 2

    Y = Surface.from_string("w^2 = x^3 + u*(u^2+u-24)*x^2 + (9/4)*u^4*x")
    assert apply_involution(Y, parse_rational("576/u^4", "u"),
                            parse_rational("13824/u^6", "u"),
                            parse_rational("-24/u", "u"))


# ---------------------------------------------------------------------------
# 6. Singular K3 at a = -1/144
# ---------------------------------------------------------------------------

def test_criterion_6_singular_k3():
    start = time.perf_counter()
    a = "(-1/144)"
    m = parse_model(
        f"y^2 = x^3 + ((9*{a}-1)/3)*x + (27*(u-{a}^3/u)+81*{a}+2)/27", "u")
    a2, a4, a6 = m[:3]
    S = Surface(a2, a4, a6, radicand=-3)
    pt = parse_rational(
        f"(3*u^4+12*u^3*{a}+6*u^2*{a}^3+4*u^2*{a}^2-12*u*{a}^4+3*{a}^6)"
        f"/(12*{a}^2*u^2)", "u")
    P = Section(S, pt, field_sqrt_rf(pt ** 3 + a4 * pt + a6))
    assert P.verify()
    assert intersect_zero(P) == 0
    assert height(P) == 4

    qt = parse_rational(
        "-(1/15552)*((1728*u)^6+222*(1728*u)^5+3039*(1728*u)^4"
        "+36740*(1728*u)^3+3039*(1728*u)^2+222*(1728*u)+1)"
        "/((1728*u)^2*((1728*u)-1)^2)", "u")
    rhs = qt ** 3 + a4 * qt + a6
    c, _ = square_classify(rhs, -3)
    assert c == Fraction(-3)
    Q = Section(S, qt, field_sqrt_rf(rhs, -3))
    assert Q.verify()
    assert height(Q) == 6
    assert height_pairing(P, Q) == 0
    assert intersect(P, Q) == 3

    located = {str(p): w for p, w in intersect_places(P, Q)}
    quad = "(u^2+(-37/3024+1/672*sqrt(-3))*u+1/2985984)"
    assert located == {"(u+1/1728)": 1, quad: 2}

    ns = NSModel(S, [P, Q])
    assert ns.rank == 20
    assert ns.disc() == -24
    assert time.perf_counter() - start < 30.0


# ---------------------------------------------------------------------------
# 7. Lattice suite
# ---------------------------------------------------------------------------

def test_criterion_7_lattices():
    start = time.perf_counter()
    for M in (1, 2, 3, 5, 10):
        assert figure_star_lattice(M).disc() == -32 * M

    L = named_lattice("E8", -1) + IntLattice([[0, 2], [2, -2]])
    assert L.disc() == -4
    over = overlattice(L, [Fraction(0)] * 8 + [Fraction(1, 2), Fraction(0)])
    assert abs(over.disc()) == 1
    assert all(over.gram[i][i] % 2 == 0 for i in range(over.rank))

    T = (named_lattice("U") + named_lattice("E7", -1)
         + named_lattice("E7", -1) + named_lattice("A1", -1)
         + named_lattice("A1", -1))
    assert T.disc() == -16
    lifts = discriminant_group(T).generator_lifts
    glue = [sum(Fraction(cf) * lifts[k][i]
                for k, cf in enumerate((0, 1, 0, 1)))
            for i in range(T.rank)]
    assert overlattice(T, glue).disc() == -4

    assert discriminant_group(named_lattice("U", 2)).invariant_factors \
        == (2, 2)

    for M, N in ((1, 3), (1, 5), (2, 3), (3, 7)):
        r = brauer_witness(M, N)
        assert r["pass"]
        assert r["D_square_mod4"] == 2
        assert r["complement_root_count"] == 0

    for M in (1, 3, 5, 7):
        assert odd_M_obstruction(M)["pass"]
    assert time.perf_counter() - start < 10.0


# ---------------------------------------------------------------------------
# 8. tau anti-invariance
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("M,N", [(1, 3), (2, 5)])
def test_criterion_8_tau(M, N):
    r = tau_check(M, N)
    assert r["pass"]
    assert r["involutive"]
    assert r["isometry"]


# ---------------------------------------------------------------------------
# 9. Property suites
# ---------------------------------------------------------------------------

def test_criterion_9_group_law_and_bilinearity():
    S = Surface.from_string("y^2 = x^3 - x + (1 - t^3 + t)")
    P = Section(S, "t", "1")
    assert P.verify()
    assert height(P) == 1
    P2 = P + P
    P3 = P2 + P
    assert P2.verify() and P3.verify()
    # identity and inverses
    assert (P + (-P)).zero
    assert (P3 - P2).x == P.x and (P3 - P2).y == P.y
    # commutativity / associativity on distinct operands
    assert (P2 + P3).x == (P3 + P2).x
    assert ((P + P2) + P3).x == (P + (P2 + P3)).x
    # bilinearity: h(mP) = m^2 h(P), parallelogram law
    assert height(P2) == 4
    assert height(P3) == 9
    assert height(P3 + P) + height(P3 - P) == 2 * height(P3) + 2 * height(P)
    assert height_pairing(P, P2) == 2


def test_criterion_9_disc_relation_on_ns_models():
    X = Surface.from_string("w^2 = x^3 + t^2*x^2 + t^3*(t-(-9/4))*(t-24)*x")
    Q = Section(X, "36*t+81", "-3*(4*t+9)*(t^2-12*t-54)/2")
    ns = NSModel(X, [Q], torsion_order=2)
    assert ns.check_disc_relation()
    assert ns.check_psi_heights()

    S = Surface.from_string("y^2 = x^3 - x + (1 - t^3 + t)")
    P = Section(S, "t", "1")
    ns2 = NSModel(S, [P])
    assert ns2.check_disc_relation()
    assert ns2.check_psi_heights()


def test_criterion_9_is_primitive_vs_snf_oracle():
    rng = random.Random(909)
    ambient = named_lattice("U") + named_lattice("E8", -1)
    G = [list(r) for r in ambient.gram]
    done = 0
    while done < 50:
        r = rng.randint(1, 6)
        M = [[rng.randint(-2, 2) for _ in range(10)] for _ in range(r)]
        gram = mat_mul(mat_mul(M, G), transpose(M))
        if mat_det(gram) == 0:
            continue
        emb = LatticeEmbedding(IntLattice(gram), ambient, M)
        prim, _witness = is_primitive(emb)
        D, _, _ = smith_normal_form(M)
        diag = [D[i][i] for i in range(r)]
        assert prim == all(abs(d) == 1 for d in diag)
        done += 1
