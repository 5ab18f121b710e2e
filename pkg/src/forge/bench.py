"""Named, fully scripted example reproductions with machine-readable reports.

Each registered :class:`ExampleCase` builds objects from the other modules,
evaluates a list of assertions in exact arithmetic, and reports every
expected value together with a provenance tag:

* ``[PAPER: ...]``  — value quoted from the source text at the cited location;
* ``[DERIVED: ...]`` — value computed independently (oracle noted);
* ``[TRIVIAL]``     — value forced by definitions.
"""

from __future__ import annotations

import json
import time
from fractions import Fraction
from itertools import product

from .poly import Place, Polynomial, RationalFunction
from .parse import parse_model, parse_rational
from .factor import field_sqrt_rf, square_classify
from .surface import Surface, apply_involution
from .section import (Section, NSModel, component_at, height, height_pairing,
                      intersect, intersect_places, intersect_zero, tau_check)
from .twist import m1_family
from .intlat import (IntLattice, named_lattice, overlattice,
                     discriminant_group, figure_star_lattice, brauer_witness,
                     odd_M_obstruction)


class Assertion:
    __slots__ = ("label", "expected", "computed", "provenance")

    def __init__(self, label, expected, computed, provenance):
        self.label = label
        self.expected = expected
        self.computed = computed
        self.provenance = provenance

    @property
    def passed(self):
        return self.expected == self.computed

    def to_dict(self):
        return {
            "label": self.label,
            "expected": _plain(self.expected),
            "computed": _plain(self.computed),
            "provenance": self.provenance,
            "pass": self.passed,
        }


class Report:
    __slots__ = ("id", "assertions", "runtime_ms")

    def __init__(self, case_id, assertions, runtime_ms):
        self.id = case_id
        self.assertions = assertions
        self.runtime_ms = runtime_ms

    @property
    def passed(self):
        return all(a.passed for a in self.assertions)

    def to_dict(self):
        return {
            "id": self.id,
            "assertions": [a.to_dict() for a in self.assertions],
            "runtime_ms": self.runtime_ms,
        }


class ExampleCase:
    __slots__ = ("id", "description", "defaults", "builder")

    def __init__(self, case_id, description, defaults, builder):
        self.id = case_id
        self.description = description
        self.defaults = defaults
        self.builder = builder

    def run(self, **overrides):
        params = dict(self.defaults)
        for key, val in overrides.items():
            if key not in params:
                raise KeyError(f"unknown parameter {key!r} for {self.id!r}")
            params[key] = val
        start = time.perf_counter()
        assertions = [Assertion(*row) for row in self.builder(**params)]
        ms = (time.perf_counter() - start) * 1000.0
        return Report(self.id, assertions, ms)


def _plain(value):
    """Render a computed/expected value as JSON-safe plain data."""
    if isinstance(value, Fraction):
        return str(value) if value.denominator != 1 else int(value)
    if isinstance(value, bool) or value is None or isinstance(value, int):
        return value
    if isinstance(value, str):
        return value
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    return str(value)


def _fiber_list(surface):
    """Sorted (place, type) pairs for the non-smooth fibers."""
    out = [(str(f.place), f.name) for f in surface.classify().fibers
           if not f.is_smooth()]
    return sorted(out)


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------

def _build_es321():
    S = Surface.from_string("y^2 = x^3 + x^2 + s*x", var="s")
    P = Section(S, "0", "0")
    return [
        ("fiber configuration",
         [("(s)", "I2"), ("(s-1/4)", "I1"), ("infinity", "III*")],
         _fiber_list(S),
         '[PAPER: §4.4 "configuration of singular fibres $[III^*, I_2, I_1]$"'
         ' ... "reducible fibres of type $III^*$ at $\\infty$ and $I_2$ at'
         ' $s=0$"]'),
        ("two-torsion section verifies", True, P.verify(),
         '[PAPER: §4.4 "two-torsion section $P=(0,0)$"]'),
        ("order of (0,0)", 2, P.torsion_order(),
         '[PAPER: §4.4 "$\\mathop{\\rm MW}(S)=\\mathbb{Z}/2\\mathbb{Z}$"]'),
        ("chi", 1, S.chi, "[TRIVIAL]"),
    ]


def _build_bpf(lam, mu):
    S = Surface.from_string(
        f"w^2 = x*(x^2 - 8*(({lam})+({mu})-2)*t^2*x"
        f" + 16*(({lam})*t+({mu}))*(({mu})*t+({lam}))*t^3)")
    summary = S.classify()
    reducible = sorted(f.name for f in summary.fibers if f.is_reducible())
    places = sorted(
        (str(f.place), f.name) for f in summary.fibers if f.is_reducible())
    Q = Section(S, "0", "0")
    lam_f, mu_f = Fraction(lam), Fraction(mu)
    return [
        ("reducible fiber types", ["I2", "I2", "III*", "III*"], reducible,
         '[PAPER: §4.4 "reducible singular fibres of type $III^*$ at'
         ' $t=0, \\infty$ and generally $I_2$ at $-\\lambda/\\mu,'
         ' -\\mu/\\lambda$"]'),
        ("reducible fiber places",
         sorted([("(t)", "III*"), ("infinity", "III*"),
                 (f"(t+{lam_f/mu_f})", "I2"), (f"(t+{mu_f/lam_f})", "I2")]),
         places,
         '[PAPER: §4.4 "$III^*$ at $t=0, \\infty$ and generally $I_2$ at'
         ' $-\\lambda/\\mu, -\\mu/\\lambda$"]'),
        ("Euler number", 24, summary.euler_total,
         "[TRIVIAL: K3, 12*chi = 24]"),
        ("order of (0,0)", 2, Q.torsion_order(),
         '[PAPER: §4.4 "two-torsion section $Q=(0,0)$"]'),
    ]


def _build_inose(A, B):
    S = Surface.from_string(f"y^2 = x^3 + ({A})*t^4*x + t^5*(t^2+({B})*t+1)")
    summary = S.classify()
    star = sorted((str(f.place), f.name) for f in summary.fibers
                  if f.name == "II*")
    alpha = parse_rational("1/t^4")
    beta = parse_rational("1/t^6")
    iota = parse_rational("1/t")
    return [
        ("II* fibers", [("(t)", "II*"), ("infinity", "II*")], star,
         '[PAPER: §5.2 Inose form, fibres of type $II^*$ at $t=0, \\infty$]'),
        ("Euler number", 24, summary.euler_total,
         "[DERIVED: remaining fibers are nodal; Euler numbers sum to 12*chi]"),
        ("invariance under (x,y,t) -> (x/t^4, y/t^6, 1/t)", True,
         apply_involution(S, alpha, beta, iota),
         '[PAPER: §5.2 the Inose pencil symmetry $t \\mapsto 1/t$]'),
    ]


def _build_m1_family(A, U, V):
    res = m1_family(A, U, V)
    xp = sorted((str(f.place), f.name)
                for f in res.package.Xprime.classify().fibers
                if f.name == "I0*")
    return [
        ("P' verifies on the twist", True, res.Pprime.verify(),
         '[PAPER: §3.8 "$X$ admits the section $P=(U(t^2), tV(t^2))$"]'),
        ("involution is free", True, res.report.free,
         '[PAPER: §3.8 Lemma, "induces the Enriques involution $\\tau$'
         ' unless"]'),
        ("degeneracy loci all avoided", False, any(res.loci.values()),
         '[PAPER: §3.8 Lemma cases (i), (ii)]'),
        ("P.O", 0, intersect_zero(res.P),
         '[PAPER: §3.5 "$P\\cap O\\cap \\{X_{t_0}, X_{t_\\infty}\\} ='
         ' \\emptyset$" on the fixed fibres; disjointness holds globally'
         ' here]'),
        ("X' has I0* at both ramification points",
         [("(t)", "I0*"), ("infinity", "I0*")], xp,
         '[PAPER: §3.3 "results in singular fibres of type $I_0^*$"]'),
    ]


def _build_m1_degenerate(A, U, V):
    res = m1_family(A, U, V)
    fib0 = res.package.X.fiber_at(Place.at(0, res.package.X.var))
    return [
        ("locus a0 = -3 u0^2 hit", True, res.loci["a0 = -3 u0^2"],
         '[PAPER: §3.8 Lemma case (i) "$a_0=-3u_0^2$"]'),
        ("fixed fiber at 0 is singular", False, fib0.is_smooth(),
         '[PAPER: §3.8 Lemma proof, "the fibre is singular if and only if'
         ' the polynomial ... has a multiple root"]'),
        ("involution is free", False, res.report.free,
         '[PAPER: §3.8 Lemma, the section fails to induce an Enriques'
         ' involution on the degeneracy loci]'),
    ]


def _build_m2_family(q):
    qf = Fraction(q)
    a = -(qf * qf - 1) ** 2 / 4
    b = 2 * qf * qf * (qf * qf - 1)
    S = Surface.from_string(
        f"w^2 = x^3 + t^2*x^2 + t^3*(t-({a}))*(t-({b}))*x")
    v_str = f"({qf*qf}*({qf*qf}-1)^2/4)*(4*t+({qf*qf}-1)^2)"
    w_str = (f"-(({qf})*({qf*qf}-1)/8)*(4*t+({qf*qf}-1)^2)"
             f"*(2*t^2-2*({qf*qf})*({qf*qf}-1)*t-({qf*qf})*({qf*qf}-1)^3)")
    Q = Section(S, v_str, w_str)
    T = Section(S, "0", "0")
    ns = NSModel(S, [Q], torsion_order=2)
    return [
        ("Q verifies", True, Q.verify(),
         '[PAPER: §4.6 "the section $Q=(V,W)$"]'),
        ("Q.O", 0, intersect_zero(Q),
         '[PAPER: §4.6 the section is disjoint from the zero section]'),
        ("h(Q)", Fraction(2), height(Q),
         '[PAPER: §4.6 the induced section has height $M=2$ on the'
         ' quotient side; here $h(Q)=2$]'),
        ("order of (0,0)", 2, T.torsion_order(),
         '[PAPER: §4.4 "two-torsion section $Q=(0,0)$" of the family]'),
        ("NS rank", 19, ns.rank,
         '[PAPER: §4.6 "$\\rho \\geq 19$" family]'),
        ("|disc NS|", 32, abs(ns.disc()),
         '[PAPER: §4.6 eq (NS-8) $U+2E_8(-1)+\\langle-8\\rangle$, whose'
         ' discriminant has absolute value 32... disc relation checked'
         ' exactly]'),
        ("disc relation", True, ns.check_disc_relation(), "[TRIVIAL]"),
    ]


def _build_2x4star(a, b):
    af, bf = Fraction(a), Fraction(b)
    S = Surface.from_string(
        f"w^2 = x^3 + u*(u^2+u-({bf}))*x^2 - ({af})*u^4*x")
    star = sorted((str(f.place), f.name) for f in S.classify().fibers
                  if f.name == "I4*")
    alpha = parse_rational(f"({bf*bf})/u^4", "u")
    beta = parse_rational(f"({bf*bf*bf})/u^6", "u")
    iota = parse_rational(f"-({bf})/u", "u")
    rows = [
        ("I4* fibers", [("(u)", "I4*"), ("infinity", "I4*")], star,
         '[PAPER: §4.6 the fibration with two fibres of type $I_4^*$]'),
        ("invariance under (t,w,u) -> (b^2 t/u^4, b^3 w/u^6, -b/u)", True,
         apply_involution(S, alpha, beta, iota),
         '[PAPER: §4.6 eq (inv-2x4*)]'),
        ("order of (0,0)", 2, Section(S, "0", "0").torsion_order(),
         '[PAPER: §4.6 two-torsion persists on this fibration]'),
    ]
    if (af, bf) == (Fraction(-9, 4), Fraction(24)):
        T = Section(S, "36", "9*u^2+72*u-216")
        rows += [
            ("T' verifies", True, T.verify(),
             '[PAPER: §4.6 the section with $x$-coordinate'
             ' $q^2(q^2-1)^2 = 36$ at $q=2$]'),
            ("T' component at 0", "Identity",
             str(component_at(T, Place.at(0, "u"))),
             "[DERIVED: component test via the minimal model at u=0]"),
            ("T' component at infinity", "StarFarPair(-1)",
             str(component_at(T, Place.infinity())),
             "[DERIVED: component test via the minimal model at infinity]"),
            ("h(T')", Fraction(2), height(T),
             '[PAPER: §4.6 height 2 via the correction table for $I_4^*$]'),
        ]
    return rows


_ES19_MODEL = ("y^2 = x^3 + ((9*({a})-1)/3)*x"
               " + (27*(u-({a})^3/u)+81*({a})+2)/27")
_ES19_SECTION = ("(3*u^4+12*u^3*({a})+6*u^2*({a})^3+4*u^2*({a})^2"
                 "-12*u*({a})^4+3*({a})^6)/(12*({a})^2*u^2)")


def _build_es19_m1(a):
    af = Fraction(a)
    m = parse_model(_ES19_MODEL.format(a=af), "u")
    a2, a4, a6 = m[:3]
    S = Surface(a2, a4, a6)
    pt = parse_rational(_ES19_SECTION.format(a=af), "u")
    P = Section(S, pt, field_sqrt_rf(pt ** 3 + a4 * pt + a6))
    ns = NSModel(S, [P])
    return [
        ("P verifies", True, P.verify(),
         '[PAPER: §5.2 the section $P$ with $x$-coordinate $P_t(u)$]'),
        ("P.O", 0, intersect_zero(P),
         '[PAPER: §5.2 $P$ is disjoint from the zero section]'),
        ("h(P)", Fraction(4), height(P),
         '[PAPER: §5.2 "$h(P)=4$"]'),
        ("NS rank", 19, ns.rank, '[PAPER: §5.2 "$\\rho \\geq 19$"]'),
        ("|disc NS|", 4, abs(ns.disc()),
         '[PAPER: §5.2 "discriminant $-4$"; the signature-(1,18) Gram'
         ' determinant is +4, the quoted sign refers to the opposite'
         ' convention]'),
        ("MWL Gram", [[Fraction(4)]], ns.mwl_gram(),
         "[DERIVED: height pairing of the single generator]"),
        ("psi-height consistency", True, ns.check_psi_heights(),
         "[TRIVIAL]"),
        ("disc relation", True, ns.check_disc_relation(), "[TRIVIAL]"),
    ]


_S24_Q = ("-(1/15552)*((1728*u)^6+222*(1728*u)^5+3039*(1728*u)^4"
          "+36740*(1728*u)^3+3039*(1728*u)^2+222*(1728*u)+1)"
          "/((1728*u)^2*((1728*u)-1)^2)")


def _build_singular_24():
    af = Fraction(-1, 144)
    m = parse_model(_ES19_MODEL.format(a=af), "u")
    a2, a4, a6 = m[:3]
    S = Surface(a2, a4, a6, radicand=-3)
    fibers = sorted((str(f.place), f.name, f.place.degree)
                    for f in S.classify().fibers if not f.is_smooth())
    pt = parse_rational(_ES19_SECTION.format(a=af), "u")
    P = Section(S, pt, field_sqrt_rf(pt ** 3 + a4 * pt + a6))
    qt = parse_rational(_S24_Q, "u")
    rhs = qt ** 3 + a4 * qt + a6
    c, _g = square_classify(rhs, -3)
    Q = Section(S, qt, field_sqrt_rf(rhs, -3))
    located = intersect_places(P, Q)
    quadratic = sorted(str(p) for p, _w in located if p.degree == 2)
    weights = sorted((str(p), w) for p, w in located)
    ns = NSModel(S, [P, Q])
    return [
        ("fiber configuration",
         sorted([("(u)", "II*", 1), ("infinity", "II*", 1),
                 ("(u^4+(23/216)*u^3+(-5593/1492992)*u^2"
                  "+(23/644972544)*u+1/8916100448256)", "I1", 4)]),
         fibers,
         '[PAPER: §5.3 two fibres of type $II^*$ and four nodal fibres at'
         ' $a=-1/144$]'),
        ("P verifies", True, P.verify(), '[PAPER: §5.3 the section $P$]'),
        ("P.O", 0, intersect_zero(P),
         '[PAPER: §5.3 $P$ disjoint from $O$]'),
        ("h(P)", Fraction(4), height(P), '[PAPER: §5.3 "$h(P)=4$"]'),
        ("square class of rhs(Q)", Fraction(-3), c,
         '[PAPER: §5.3 $y(Q)$ lives in the $\\sqrt{-3}$-twist]'),
        ("Q verifies over Q(sqrt(-3))", True, Q.verify(),
         '[PAPER: §5.3 the section $Q$ with $x$-coordinate $Q_t$]'),
        ("h(Q)", Fraction(6), height(Q), '[PAPER: §5.3 "$h(Q)=6$"]'),
        ("<P,Q>", Fraction(0), height_pairing(P, Q),
         '[PAPER: §5.3 $P$ and $Q$ are orthogonal]'),
        ("P.Q", 3, intersect(P, Q), '[PAPER: §5.3 "$P\\cdot Q = 3$"]'),
        ("quadratic intersection factor",
         ["(u^2+(-37/3024+1/672*sqrt(-3))*u+1/2985984)"], quadratic,
         '[PAPER: §5.3 "$20901888u^2-(255744\\mp31104\\sqrt{-3})u+7$";'
         ' this is 20901888 times the monic factor above (one sign branch;'
         ' the other occurs for $-Q$)]'),
        ("located intersection weights",
         sorted([("(u+1/1728)", 1),
                 ("(u^2+(-37/3024+1/672*sqrt(-3))*u+1/2985984)", 2)]),
         weights,
         '[DERIVED: multiplicity times residue degree at each located'
         ' place; total matches P.Q = 3]'),
        ("NS rank", 20, ns.rank, '[PAPER: §5.3 "$\\rho = 20$"]'),
        ("disc NS", -24, ns.disc(),
         '[PAPER: §5.3 "discriminant $-24$"]'),
        ("MWL Gram", [[Fraction(4), Fraction(0)],
                      [Fraction(0), Fraction(6)]], ns.mwl_gram(),
         "[DERIVED: height pairing of the two generators]"),
        ("psi-height consistency", True, ns.check_psi_heights(),
         "[TRIVIAL]"),
        ("disc relation", True, ns.check_disc_relation(), "[TRIVIAL]"),
    ]


def _build_brauer(M, N):
    r = brauer_witness(M, N)
    return [
        ("witness passes", True, r["pass"],
         '[PAPER: §5.1-§5.3 the Brauer-group witness construction]'),
        ("D^2 = 2 mod 4", 2, r["D_square_mod4"],
         '[PAPER: §5.1 "$D^2 \\equiv 2 \\bmod 4$"]'),
        ("complement is rootless", 0, r["complement_root_count"],
         '[PAPER: §5.1 the orthogonal complement contains no (-2)-vectors]'),
        ("embedding primitive", True, r["primitive"], "[TRIVIAL]"),
    ]


def _build_figure3(M):
    L = figure_star_lattice(M)
    return [
        ("disc", -32 * int(M), L.disc(),
         '[PAPER: Figure 3 lattice, "discriminant $-32M$"]'),
    ]


def _build_odd_M(M):
    r = odd_M_obstruction(M)
    return [
        ("obstruction holds", True, r["pass"],
         '[PAPER: Prop M(i), odd $M$ obstruction]'),
        ("q-value witness", "1/2", r["q_value"],
         '[PAPER: Prop M(i) discriminant-form value $\\tfrac12 \\bmod'
         ' 2\\mathbb{Z}$]'),
    ]


def _build_triv_disc():
    T = (named_lattice("U") + named_lattice("E7", -1)
         + named_lattice("E7", -1) + named_lattice("A1", -1)
         + named_lattice("A1", -1))
    dg = discriminant_group(T)
    lifts = dg.generator_lifts
    n = T.rank
    glue = [sum(Fraction(c) * lifts[k][i] for k, c in enumerate((0, 1, 0, 1)))
            for i in range(n)]
    over = overlattice(T, glue)
    return [
        ("disc of U + 2E7(-1) + 2A1(-1)", -16, T.disc(),
         "[TRIVIAL: product of component discriminants]"),
        ("discriminant group", (2, 2, 2, 2), dg.invariant_factors,
         "[TRIVIAL]"),
        ("glued overlattice disc", -4, over.disc(),
         '[PAPER: eq (triv), the trivial lattice glued by the two-torsion'
         ' section has discriminant $-4$]'),
    ]


def _build_cti(M):
    Mi = int(M)
    L = named_lattice("E8", -1) + IntLattice([[0, 2], [2, 2 * (Mi - 2)]])
    glue = [Fraction(0)] * 8 + [Fraction(1, 2), Fraction(0)]
    over = overlattice(L, glue)
    return [
        ("disc", -4, L.disc(),
         '[PAPER: Lemma cti, the lattice has discriminant $-4$]'),
        ("index-2 overlattice disc", -1, over.disc(),
         '[PAPER: Lemma cti, the overlattice is unimodular]'),
        ("overlattice is even", True,
         all(over.gram[i][i] % 2 == 0 for i in range(over.rank)),
         "[TRIVIAL]"),
    ]


def _build_tau_anti(M, N):
    r = tau_check(M, N)
    return [
        ("tau check passes", True, r["pass"],
         '[PAPER: Lemma psi-tau, anti-invariance of the induced section'
         ' classes]'),
        ("tau*^2 = id", True, r["involutive"],
         '[PAPER: Lemma psi-tau, $\\tau^{*2} = \\mathrm{id}$]'),
        ("Gram preserved", True, r["isometry"],
         '[PAPER: Lemma psi-tau, $\\tau^*$ is an isometry]'),
    ]


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

REGISTRY = {}


def _register(case_id, description, defaults, builder):
    REGISTRY[case_id] = ExampleCase(case_id, description, defaults, builder)


_register("es321",
          "Rational elliptic surface with fibers [III*, I2, I1] and a"
          " two-torsion section.",
          {}, _build_es321)
_register("bpf",
          "Two-parameter K3 family with two III* and two I2 fibers.",
          {"lam": Fraction(2), "mu": Fraction(3)}, _build_bpf)
_register("inose",
          "Pencil with two II* fibers and the t -> 1/t symmetry.",
          {"A": Fraction(2), "B": Fraction(3)}, _build_inose)
_register("m1-family",
          "Nine-dimensional free-involution family: generic member.",
          {"A": "t^4+2", "U": "t^2+t", "V": "t^2+1"}, _build_m1_family)
_register("m1-lemma-degenerate",
          "Degeneracy locus a0 = -3 u0^2 of the free-involution family.",
          {"A": "t^4+t^3+t^2+t-3", "U": "t^2+t+1", "V": "t^2+2*t+5"},
          _build_m1_degenerate)
_register("m2-family",
          "rho >= 19 specialization with an explicit non-torsion section.",
          {"q": Fraction(2)}, _build_m2_family)
_register("2x4star",
          "Fibration with two I4* fibers, its involution, and an explicit"
          " height-2 section.",
          {"a": Fraction(-9, 4), "b": Fraction(24)}, _build_2x4star)
_register("es19-m1",
          "rho = 19 one-parameter family member with a height-4 section.",
          {"a": Fraction(2)}, _build_es19_m1)
_register("singular-24",
          "Singular K3 (rho = 20, disc -24) with sections P, Q of heights"
          " 4 and 6.",
          {}, _build_singular_24)
_register("brauer",
          "Brauer-group witness lattice embedding.",
          {"M": 1, "N": 3}, _build_brauer)
_register("figure3",
          "Star-shaped diagram lattice of discriminant -32M.",
          {"M": 1}, _build_figure3)
_register("odd-M",
          "Discriminant-form obstruction for odd M.",
          {"M": 1}, _build_odd_M)
_register("triv-disc",
          "Trivial lattice U + 2E7(-1) + 2A1(-1) glued to discriminant -4.",
          {}, _build_triv_disc)
_register("cti-lattice",
          "Rank-10 discriminant -4 lattice with unimodular overlattice.",
          {"M": 1}, _build_cti)
_register("tau-anti",
          "Anti-invariance and isometry checks for the induced involution"
          " on the Neron-Severi model.",
          {"M": 1, "N": 3}, _build_tau_anti)


def example_ids():
    return list(REGISTRY)


def _resolve(case_id):
    """Resolve an id, allowing suffixed parameter forms like brauer-1-3."""
    if case_id in REGISTRY:
        return REGISTRY[case_id], {}
    parts = case_id.split("-")
    for cut in range(len(parts) - 1, 0, -1):
        base = "-".join(parts[:cut])
        if base in REGISTRY:
            case = REGISTRY[base]
            tail = parts[cut:]
            keys = list(case.defaults)
            if len(tail) == len(keys):
                overrides = {}
                try:
                    for key, tok in zip(keys, tail):
                        overrides[key] = Fraction(tok)
                except ValueError:
                    continue
                return case, overrides
    raise KeyError(f"unknown example id: {case_id!r}")


def run_example(case_id, **overrides):
    case, suffix_overrides = _resolve(case_id)
    suffix_overrides.update(overrides)
    return case.run(**suffix_overrides)


def run_all():
    return [REGISTRY[cid].run() for cid in sorted(REGISTRY)]


def emit_report(report, format="text"):
    if format == "json":
        return json.dumps(report.to_dict(), indent=2) + "\n"
    if format != "text":
        raise ValueError(f"unknown format: {format!r}")
    lines = [f"example: {report.id}"]
    for a in report.assertions:
        mark = "PASS" if a.passed else "FAIL"
        lines.append(f"  [{mark}] {a.label}")
        lines.append(f"         expected: {_plain(a.expected)}")
        lines.append(f"         computed: {_plain(a.computed)}")
        lines.append(f"         provenance: {a.provenance}")
    status = "PASS" if report.passed else "FAIL"
    lines.append(f"  result: {status} ({report.runtime_ms:.1f} ms)")
    return "\n".join(lines) + "\n"
