"""Quadratic base change, quadratic twist, deck/Nikulin involutions and the
fixed-point-free (Enriques) criterion for translation-composed involutions."""

from __future__ import annotations

from fractions import Fraction

from .field import FieldElement, ZERO
from .poly import Polynomial, RationalFunction, Place
from .factor import roots_in_field
from .surface import Surface
from .section import Section, ComponentLabel, _component_label, intersect_zero


class BaseChangeError(ValueError):
    pass


_STAR_TYPES = {"I0*", "In*", "IV*", "III*", "II*"}


class QuadraticBaseChange:
    """A degree-2 map f of the projective line, with its deck involution and
    ramification points, normalized so that the deck becomes s -> -s."""

    def __init__(self, f, var=None):
        if isinstance(f, str):
            from .parse import parse_rational
            f = parse_rational(f, var)
        f = RationalFunction.of(f, var or "t")
        deg = max(int(f.num.degree), int(f.den.degree))
        if deg != 2:
            raise BaseChangeError("base change map must have degree 2")
        self.f = f
        n = [f.num[i] for i in range(3)]
        d = [f.den[i] for i in range(3)]
        # N(s1)D(s2) - N(s2)D(s1) = (s1 - s2)(alpha s1 s2 + beta (s1+s2) + gamma)
        alpha = n[2] * d[1] - n[1] * d[2]
        beta = n[2] * d[0] - n[0] * d[2]
        gamma = n[1] * d[0] - n[0] * d[1]
        if not (alpha or beta or gamma):
            raise BaseChangeError("map is not separable of degree 2")
        self.alpha, self.beta, self.gamma = alpha, beta, gamma
        var = f.var()
        t = Polynomial.gen(var)
        if alpha or gamma:
            self.deck = RationalFunction(-(t * beta + gamma),
                                         t * alpha + beta)
        else:  # deck t -> -t - gamma/beta ... alpha = gamma = 0
            self.deck = RationalFunction(-t) - RationalFunction.of(
                gamma / beta, var)
        self.ramification = self._ramification_places(var)

    def _ramification_places(self, var):
        # fixed points of the deck: alpha s^2 + 2 beta s + gamma = 0
        a, b, c = self.alpha, 2 * self.beta, self.gamma
        places = []
        if not a:
            places.append(Place.infinity())
            if b:
                places.append(Place.at(-c / b, var))
            return places
        p = Polynomial([c / a, b / a, FieldElement(1)], var)
        roots = roots_in_field(p, None)
        if any(m > 1 for _r, m in roots):
            raise BaseChangeError("degenerate ramification")
        if roots:
            return [Place.at(r, var) for r, _m in roots]
        return [Place(p)]

    def branch_values(self):
        """Images of the ramification points under f (None for infinity)."""
        out = []
        for pl in self.ramification:
            if pl.is_infinity():
                out.append(self._value_at_infinity())
            elif pl.degree == 1:
                out.append(self.f.evaluate(-pl.poly[0]))
            else:
                out.append(pl)  # conjugate pair; kept symbolic
        return out

    def _value_at_infinity(self):
        nd, dd = int(self.f.num.degree), int(self.f.den.degree)
        if nd > dd:
            return None  # infinity
        if nd < dd:
            return FieldElement(0) * self.f.num.lc()  # zero
        return self.f.num.lc() / self.f.den.lc()


def _branch_place(value, var):
    if value is None:
        return Place.infinity()
    if isinstance(value, Place):
        return value
    return Place.at(value, var)


def pullback(S, f):
    """Base change of S along a degree-2 map; fibers over the branch points
    must be reduced (no star types)."""
    bc = f if isinstance(f, QuadraticBaseChange) else QuadraticBaseChange(f, S.var)
    for value in bc.branch_values():
        pl = _branch_place(value, S.var)
        if pl.degree > 1:
            continue  # conjugate irrational branch points: same check below
        fib = S.fiber_at(pl)
        if fib.symbol in _STAR_TYPES:
            raise BaseChangeError(
                f"fiber {fib.name} at branch point {pl} is not reduced")
    a2 = S.a2.compose(bc.f)
    a4 = S.a4.compose(bc.f)
    a6 = S.a6.compose(bc.f)
    return Surface(a2, a4, a6, radicand=S.radicand)


def twist(S, d):
    """Quadratic twist of the short model: (A, B) -> (d^2 A, d^3 B)."""
    if isinstance(d, str):
        from .parse import parse_polynomial
        d = parse_polynomial(d, S.var)
    d = RationalFunction.of(d, S.var)
    A = RationalFunction(S.A) * d * d
    B = RationalFunction(S.B) * d ** 3
    zero = RationalFunction.of(0, S.var)
    return Surface(zero, A, B, radicand=S.radicand)


TWIST_TABLE = {"I0": "I0*", "In": "In*", "II": "IV*", "III": "III*",
               "IV": "II*", "I0*": "I0", "In*": "In", "IV*": "II",
               "III*": "III", "II*": "IV"}


class TwistPackage:
    """The base-change triangle in the normalized chart f(t) = t^2:

    S (rational base), X = pullback along t -> t^2, X' = twist by d = t.
    deck: t -> -t on X; nikulin = deck composed with the fiberwise (-1).
    """

    def __init__(self, S):
        self.S = S
        var = S.var
        t = Polynomial.gen(var)
        sq = RationalFunction(t * t)
        self.X = Surface(S.a2.compose(sq), S.a4.compose(sq),
                         S.a6.compose(sq), radicand=S.radicand)
        self.Xprime = twist(S, t)
        self.deck = RationalFunction(-t)
        self.f = sq

    def transfer_section(self, Pprime):
        """Section of X' -> section of X: (x', y') -> (x'(t^2)/t^2, y'(t^2)/t^3)."""
        if Pprime.zero:
            return Section.zero_section(self.X)
        if not Pprime.verify():
            raise ValueError("section does not verify on the twist")
        var = self.S.var
        t = RationalFunction(Polynomial.gen(var))
        sq = self.f
        # undo the twist's internal minimalization, then substitute
        u = self.Xprime.scale_u
        xw = (Pprime.x * u * u).compose(sq)
        yw = (Pprime.y * u ** 3).compose(sq)
        x = xw / (t * t)
        y = yw / (t ** 3)
        P = Section(self.X, x, y, coords="input")
        if not P.verify():
            raise ValueError("transferred section does not verify")
        return P


class EnriquesReport:
    """Per-ramification-fiber freeness verdicts for tau = deck o (translation
    by the inverse of P)."""

    def __init__(self, verdicts):
        self.verdicts = verdicts  # place -> (free: bool, reason: str)

    @property
    def free(self):
        return all(v[0] for v in self.verdicts.values())

    def __repr__(self):
        body = ", ".join(f"{p}: {'free' if ok else 'fixed'} ({why})"
                         for p, (ok, why) in self.verdicts.items())
        return f"EnriquesReport({'free' if self.free else 'not free'}; {body})"


def _is_anti_invariant(X, P):
    """deck^* P = inverse of P, for the normalized deck t -> -t."""
    var = X.var
    t = Polynomial.gen(var)
    neg = RationalFunction(-t)
    if P.zero:
        return True
    return (P.x.compose(neg) == P.x) and (P.y.compose(neg) == -P.y)


def _meets_zero_at(X, P, pl):
    """True if the section P meets the zero section above the place pl."""
    if pl.is_infinity():
        xs, _ = X.transport_to_chart(P.x, P.y)
        return xs.valuation(Place.at(0, "s_")) < 0
    return P.x.valuation(pl) < 0


def enriques_check(X, P, deck=None):
    """Freeness of tau = deck o (translation by -P) on the two fixed fibers
    (t = 0 and t = infinity in the normalized chart)."""
    if not _is_anti_invariant(X, P):
        raise ValueError("section is not anti-invariant under the deck map")
    if P.zero:
        raise ValueError("P must differ from the zero section")
    verdicts = {}
    for pl in (Place.at(0, X.var), Place.infinity()):
        fib = X.fiber_at(pl)
        if fib.is_smooth():
            if pl.is_infinity():
                xs, _ = X.transport_to_chart(P.x, P.y)
                v = xs.valuation(Place.at(0, "s_"))
            else:
                v = P.x.valuation(pl)
            if v < 0:
                verdicts[pl] = (False, "P meets O on the smooth fixed fiber")
            else:
                verdicts[pl] = (True, "smooth fixed fiber, P avoids O")
        elif fib.is_multiplicative():
            n = fib.n
            if n % 2:
                verdicts[pl] = (False,
                                f"I{n} fixed fiber with odd n cannot split")
                continue
            if not fib.is_reducible():
                verdicts[pl] = (False, "I1 fixed fiber has only the identity "
                                       "component")
                continue
            label = _component_label(P, pl, fib)
            if label.is_identity():
                verdicts[pl] = (False, "P meets the identity component")
            elif label.index * 2 == n:
                # Order-2 freeness on the opposite component additionally
                # requires P to specialise to a two-torsion point of the
                # fiber, i.e. 2P must meet O there.
                twoP = P + P
                if twoP.zero or _meets_zero_at(X, twoP, pl):
                    verdicts[pl] = (True,
                                    f"P meets the opposite component of I{n} "
                                    "at a two-torsion point")
                else:
                    verdicts[pl] = (False,
                                    f"P meets the opposite component of I{n} "
                                    "but not at a two-torsion point")
            else:
                verdicts[pl] = (False,
                                f"component {label.index} of I{n} is not "
                                "opposite; translation has order > 2 there")
        else:
            verdicts[pl] = (False, f"additive fixed fiber {fib.name}")
    return EnriquesReport(verdicts)


class M1FamilyResult:
    def __init__(self, package, Pprime, P, report, loci):
        self.package = package
        self.Pprime = Pprime
        self.P = P
        self.report = report
        self.loci = loci


def m1_family(A, U, V, var="t"):
    """Rational-base family with B = t V^2 - (U^3 + A U): builds the twist
    package, the section P' = (t U, t^2 V) on X', its transfer P on X, and
    evaluates the degeneracy loci of the fixed fibers."""
    from .parse import parse_polynomial
    if isinstance(A, str):
        A = parse_polynomial(A, var)
    if isinstance(U, str):
        U = parse_polynomial(U, var)
    if isinstance(V, str):
        V = parse_polynomial(V, var)
    if int(A.degree) > 4 or int(U.degree) > 2 or int(V.degree) > 2:
        raise ValueError("degree bounds: deg A <= 4, deg U, V <= 2")
    t = Polynomial.gen(var)
    B = t * V * V - (U ** 3 + A * U)
    S = Surface.from_short(A, B)
    pkg = TwistPackage(S)
    Pprime = Section(pkg.Xprime, RationalFunction(t * U),
                     RationalFunction(t * t * V))
    if not Pprime.verify():
        raise ValueError("P' does not verify on the twist")
    P = pkg.transfer_section(Pprime)
    a0, u0 = A[0], U[0]
    a4, u2 = A[4], U[2]
    loci = {
        "a0 = -3 u0^2": a0 == -3 * u0 * u0,
        "a0 = -3 u0^2 / 4": 4 * a0 == -3 * u0 * u0,
        "a4 = -3 u2^2": a4 == -3 * u2 * u2,
        "a4 = -3 u2^2 / 4": 4 * a4 == -3 * u2 * u2,
    }
    report = enriques_check(pkg.X, P)
    return M1FamilyResult(pkg, Pprime, P, report, loci)
