"""Weierstrass models over the projective line: short form, minimalization,
chart at infinity, Kodaira fiber classification and involution checks."""

from __future__ import annotations

from fractions import Fraction

from .field import FieldElement, ONE
from .poly import Polynomial, RationalFunction, Place, INF
from .factor import factor_squarefree

EULER = {"I0": 0, "II": 2, "III": 3, "IV": 4, "I0*": 6, "IV*": 8,
         "III*": 9, "II*": 10}
ROOT_LATTICE = {"III": "A1", "IV": "A2", "I0*": "D4", "IV*": "E6",
                "III*": "E7", "II*": "E8"}


class FiberClassification:
    """Kodaira type of the fiber at one place."""

    __slots__ = ("place", "symbol", "n", "euler", "root_lattice", "components")

    def __init__(self, place, symbol, n=0):
        self.place = place
        self.symbol = symbol
        self.n = n
        if symbol == "In":
            self.euler = n
            self.root_lattice = f"A{n - 1}" if n >= 2 else None
            self.components = n
        elif symbol == "In*":
            self.euler = 6 + n
            self.root_lattice = f"D{n + 4}"
            self.components = n + 5
        else:
            self.euler = EULER[symbol]
            self.root_lattice = ROOT_LATTICE.get(symbol)
            self.components = {"I0": 1, "II": 1, "III": 2, "IV": 3, "I0*": 5,
                               "IV*": 7, "III*": 8, "II*": 9}[symbol]
        if symbol == "I0" or (symbol == "In" and n == 1):
            self.root_lattice = None

    @property
    def name(self):
        if self.symbol == "In":
            return f"I{self.n}"
        if self.symbol == "In*":
            return f"I{self.n}*"
        return self.symbol

    def is_reducible(self):
        return self.components > 1

    def is_multiplicative(self):
        return self.symbol == "In" and self.n >= 1

    def is_smooth(self):
        return self.symbol == "I0"

    def __repr__(self):
        return f"{self.name} at {self.place}"


def kodaira_from_valuations(a, b, d):
    """Characteristic-zero Tate table from v(A), v(B), v(Delta)."""
    if d == 0:
        return ("I0", 0)
    if a == 0:
        return ("In", int(d))
    if a >= 1 and b == 1:
        return ("II", 0)
    if a == 1 and b >= 2:
        return ("III", 0)
    if a >= 2 and b == 2:
        return ("IV", 0)
    if a >= 2 and b >= 3 and d == 6:
        return ("I0*", 0)
    if a == 2 and b == 3 and d > 6:
        return ("In*", int(d) - 6)
    if a >= 3 and b == 4:
        return ("IV*", 0)
    if a == 3 and b >= 5:
        return ("III*", 0)
    if a >= 4 and b == 5:
        return ("II*", 0)
    raise ValueError(f"non-minimal model: v(A)={a}, v(B)={b}, v(Delta)={d}")


class SurfaceSummary:
    __slots__ = ("chi", "euler_total", "kind", "fibers", "isotrivial",
                 "degenerate_flag")

    def __init__(self, chi, euler_total, kind, fibers, isotrivial, degenerate):
        self.chi = chi
        self.euler_total = euler_total
        self.kind = kind
        self.fibers = fibers
        self.isotrivial = isotrivial
        self.degenerate_flag = degenerate

    def configuration(self, reducible_only=False):
        out = [f for f in self.fibers if not f.is_smooth()]
        if reducible_only:
            out = [f for f in out if f.is_reducible()]
        return [f.name for f in out]

    def to_dict(self):
        return {
            "chi": self.chi,
            "euler": self.euler_total,
            "kind": self.kind,
            "fibers": [{"place": str(f.place), "type": f.name,
                        "euler": f.euler, "degree": f.place.degree,
                        "root_lattice": f.root_lattice}
                       for f in self.fibers if not f.is_smooth()],
        }


class Surface:
    """A jacobian elliptic surface carried by its minimal short model.

    Construct from long coefficients (a2, a4, a6); the short form and the
    finite-place minimalization are applied once, and the coordinate
    transforms are retained so sections written against the input model can
    be transported exactly: x_min = (x + a2/3) / u**2, y_min = y / u**3.
    """

    def __init__(self, a2, a4, a6, radicand=None):
        var = None
        for p in (a2, a4, a6):
            if not p.is_constant():
                var = p.var() if isinstance(p, RationalFunction) else p.var
        if var is None:
            var = a2.var() if isinstance(a2, RationalFunction) else a2.var
        self.var = var
        self.a2 = RationalFunction.of(a2.rename(var), var)
        self.a4 = RationalFunction.of(a4.rename(var), var)
        self.a6 = RationalFunction.of(a6.rename(var), var)
        self.radicand = radicand
        third = FieldElement(Fraction(1, 3))
        A0 = self.a4 - self.a2 * self.a2 * third
        B0 = (self.a2 ** 3) * FieldElement(Fraction(2, 27)) \
            - self.a2 * self.a4 * third + self.a6
        if A0.is_zero() and B0.is_zero():
            raise ValueError("degenerate model: A = B = 0")
        A1, B1, w = _clear_poles(A0, B0, radicand)
        A2, B2, u = _minimalize(A1, B1, radicand)
        self.A, self.B = A2, B2
        self.scale_u = RationalFunction(u) / RationalFunction(w)
        self.delta = (self.A ** 3 * 4 + self.B ** 2 * 27) * 16
        if self.delta.is_zero():
            raise ValueError("degenerate model: identically singular")
        self.chi = _chi_of(self.A, self.B)
        self._fibers = None
        self._chart = None
        self._fiber_data = {}

    @staticmethod
    def from_short(A, B, radicand=None):
        var = A.var if not A.is_constant() else B.var
        zero = Polynomial([], var)
        return Surface(zero, A, B, radicand=radicand)

    @staticmethod
    def from_string(s, var=None, radicand=None):
        from .parse import parse_model
        a2, a4, a6, _ = parse_model(s, var)
        return Surface(a2, a4, a6, radicand=radicand)

    # -- section coordinate transport ----------------------------------------

    def to_short(self, x, y):
        """Transport input-model coordinates to the minimal short model."""
        x = RationalFunction.of(x, self.var)
        y = RationalFunction.of(y, self.var)
        u = self.scale_u
        third = FieldElement(Fraction(1, 3))
        xs = (x + self.a2 * third) / (u * u)
        ys = y / (u * u * u)
        return xs, ys

    def rhs_short(self, x):
        x = RationalFunction.of(x, self.var)
        return x ** 3 + x * RationalFunction(self.A) + RationalFunction(self.B)

    # -- chart at infinity ----------------------------------------------------

    def infinity_chart(self):
        """The surface in the coordinate s = 1/t, fiber at t = infinity at s = 0."""
        if self._chart is None:
            A = self.A.reverse(4 * self.chi, "s_")
            B = self.B.reverse(6 * self.chi, "s_")
            self._chart = Surface.from_short(A, B, radicand=self.radicand)
            one = RationalFunction.of(1, "s_")
            if self._chart.chi != self.chi or self._chart.scale_u != one:
                raise AssertionError("infinity chart is not minimal")
        return self._chart

    def transport_to_chart(self, x, y):
        """Minimal-model coordinates t -> chart coordinates s = 1/t."""
        s = Polynomial.gen("s_")
        inv = RationalFunction(Polynomial.constant(1, "s_"), s)
        xs = _substitute(x, inv) * RationalFunction(s) ** (2 * self.chi)
        ys = _substitute(y, inv) * RationalFunction(s) ** (3 * self.chi)
        return xs, ys

    # -- classification ---------------------------------------------------------

    def valuations_at(self, place):
        if place.is_infinity():
            chart = self.infinity_chart()
            return (chart.A.valuation(), chart.B.valuation(),
                    chart.delta.valuation())
        q = place.poly
        return (self.A.valuation(q), self.B.valuation(q),
                self.delta.valuation(q))

    def kodaira_type(self, place):
        a, b, d = self.valuations_at(place)
        symbol, n = kodaira_from_valuations(a, b, d)
        return FiberClassification(place, symbol, n)

    @property
    def fibers(self):
        if self._fibers is None:
            out = []
            _, factors = factor_squarefree(self.delta, self.radicand)
            for q, _m in factors:
                out.append(self.kodaira_type(Place(q)))
            out.sort(key=lambda f: f.place.sort_key())
            out.append(self.kodaira_type(Place.infinity()))
            self._fibers = out
        return self._fibers

    def fiber_at(self, place):
        for f in self.fibers:
            if f.place == place:
                return f
        return self.kodaira_type(place)

    def classify(self):
        total = sum(f.euler * f.place.degree for f in self.fibers)
        if total != 12 * self.chi:
            raise AssertionError(
                f"Euler numbers sum to {total}, expected {12 * self.chi}")
        kind = {1: "rational", 2: "K3"}.get(self.chi, "other")
        return SurfaceSummary(self.chi, total, kind, list(self.fibers),
                              self.is_isotrivial(), not self._ab_two_zeroes())

    def is_isotrivial(self):
        # j is constant iff A^3 and Delta are proportional
        if self.A.is_zero() or self.B.is_zero():
            return True
        a3 = self.A ** 3
        return a3 * self.delta.lc() == self.delta * a3.lc()

    def _ab_two_zeroes(self):
        ab = self.A * self.B
        if ab.is_zero():
            return False
        zeroes = 0
        _, factors = factor_squarefree(ab, self.radicand)
        zeroes += sum(q.degree for q, _ in factors)
        if ab.degree < 10 * self.chi:  # a zero at infinity as well
            zeroes += 1
        return zeroes >= 2

    def j_invariant(self):
        """Standard j = c4^3 / Delta_std = 6912 A^3 / (4A^3 + 27B^2)."""
        num = self.A ** 3 * 6912
        den = self.A ** 3 * 4 + self.B ** 2 * 27
        return RationalFunction(num, den)

    def __repr__(self):
        return f"Surface(chi={self.chi}, A={self.A}, B={self.B})"


def _substitute(r, target):
    """Substitute the variable of a rational function by `target`."""
    r = RationalFunction.of(r)
    return r.compose(target)


def _chi_of(A, B):
    ks = [1]
    if not A.is_zero():
        ks.append(-(-int(A.degree) // 4))
    if not B.is_zero():
        ks.append(-(-int(B.degree) // 6))
    return max(ks)


def _clear_poles(A, B, radicand):
    """Scale rational short coefficients to polynomials: (A w^4, B w^6, w)."""
    var = A.var if not A.is_constant() else B.var
    w = Polynomial.constant(1, var)
    den = A.den * B.den
    if not den.is_constant():
        _, factors = factor_squarefree(den, radicand)
        for q, _m in factors:
            a = max(0, -A.valuation(Place(q)))
            b = max(0, -B.valuation(Place(q)))
            e = max(-(-a // 4), -(-b // 6))
            if e:
                w = w * q ** e
    wr = RationalFunction(w)
    A = (A * wr ** 4).as_polynomial()
    B = (B * wr ** 6).as_polynomial()
    return A, B, w


def _minimalize(A, B, radicand):
    """Remove all finite places with v(A) >= 4 and v(B) >= 6; returns the
    reduced pair and the polynomial u with (A, B) = (u^4 A', u^6 B')."""
    u = Polynomial.constant(1, A.var if not A.is_constant() else B.var)
    basis = A * B if (not A.is_zero() and not B.is_zero()) else (A + B)
    _, factors = factor_squarefree(basis, radicand) if not basis.is_zero() else (None, [])
    for q, _m in factors:
        while True:
            a = A.valuation(q)
            b = B.valuation(q)
            e = int(min(a // 4, b // 6))
            if e < 1:
                break
            q4 = q ** (4 * e)
            q6 = q ** (6 * e)
            if not A.is_zero():
                A = A.exact_div(q4)
            if not B.is_zero():
                B = B.exact_div(q6)
            u = u * q ** e
    return A, B, u


def apply_involution(surface, alpha, beta, iota):
    """Check that (x, y, t) -> (alpha(t) x, beta(t) y, iota(t)) maps the model
    to itself (a Weierstrass isomorphism), i.e. beta^2 = alpha^3 and
    a_i(iota) = alpha^i a_i for i = 2, 4, 6."""
    var = surface.var
    alpha = RationalFunction.of(alpha, var)
    beta = RationalFunction.of(beta, var)
    iota = RationalFunction.of(iota, var)
    if beta * beta != alpha ** 3:
        return False
    for i, ai in ((2, surface.a2), (4, surface.a4), (6, surface.a6)):
        if ai.is_zero():
            continue
        if ai.compose(iota) != ai * alpha ** (i // 2):
            return False
    # coefficients that are identically zero must stay zero: automatic
    return True
