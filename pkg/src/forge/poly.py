"""Univariate polynomials, rational functions and places over an exact field."""

from __future__ import annotations

from fractions import Fraction

from .field import FieldElement, ZERO, ONE

NEG_INF = float("-inf")
INF = float("inf")


def _coerce_scalar(x):
    if isinstance(x, FieldElement):
        return x
    if isinstance(x, (int, Fraction)):
        return FieldElement(x)
    return None


class Polynomial:
    """Dense univariate polynomial, coefficients lowest degree first.

    Trailing zero coefficients are stripped on construction; the zero
    polynomial has an empty coefficient tuple and degree -inf.
    """

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs, var="t"):
        cs = [c if isinstance(c, FieldElement) else FieldElement(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var

    @staticmethod
    def constant(c, var="t"):
        return Polynomial([FieldElement.of(c)], var)

    @staticmethod
    def gen(var="t"):
        return Polynomial([0, 1], var)

    # -- basics ---------------------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self):
        return not self.coeffs

    def is_constant(self):
        return len(self.coeffs) <= 1

    def lc(self):
        if not self.coeffs:
            return ZERO
        return self.coeffs[-1]

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else ZERO

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, FieldElement)):
            other = Polynomial.constant(other, self.var)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def _join_var(self, other):
        if self.is_constant():
            return other.var
        if other.is_constant():
            return self.var
        if self.var != other.var:
            raise ValueError(f"variable mismatch: {self.var} vs {other.var}")
        return self.var

    # -- ring operations --------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, RationalFunction):
            return NotImplemented
        c = _coerce_scalar(other)
        if c is not None:
            other = Polynomial.constant(c, self.var)
        if not isinstance(other, Polynomial):
            return NotImplemented
        var = self._join_var(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial([self[i] + other[i] for i in range(n)], var)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        if isinstance(other, RationalFunction):
            return NotImplemented
        return self + (-other if isinstance(other, Polynomial) else -FieldElement.of(other))

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        if isinstance(other, RationalFunction):
            return NotImplemented
        c = _coerce_scalar(other)
        if c is not None:
            return Polynomial([ci * c for ci in self.coeffs], self.var)
        if not isinstance(other, Polynomial):
            return NotImplemented
        var = self._join_var(other)
        if self.is_zero() or other.is_zero():
            return Polynomial([], var)
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Polynomial(out, var)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = Polynomial.constant(1, self.var)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __divmod__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(_coerce_scalar(other), self.var)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        var = self._join_var(other)
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Polynomial([], var), self
        quo = [ZERO] * (dq + 1)
        inv_lc = other.lc().inverse()
        for k in range(dq, -1, -1):
            c = rem[k + len(other.coeffs) - 1] * inv_lc
            quo[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] = rem[k + j] - c * b
        return Polynomial(quo, var), Polynomial(rem, var)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ValueError("inexact polynomial division")
        return q

    def __truediv__(self, other):
        c = _coerce_scalar(other)
        if c is not None:
            return self * c.inverse()
        if isinstance(other, Polynomial):
            return RationalFunction(self, other)
        return NotImplemented

    # -- structural helpers -------------------------------------------------------

    def monic(self):
        if self.is_zero():
            return self
        return self * self.lc().inverse()

    def derivative(self):
        return Polynomial(
            [self.coeffs[i] * i for i in range(1, len(self.coeffs))], self.var)

    def evaluate(self, x):
        """Horner evaluation; x may be a FieldElement, Polynomial or RationalFunction."""
        if isinstance(x, (int, Fraction)):
            x = FieldElement(x)
        if isinstance(x, FieldElement):
            acc = ZERO
        elif isinstance(x, Polynomial):
            acc = Polynomial([], x.var)
        elif isinstance(x, RationalFunction):
            acc = RationalFunction(Polynomial([], x.var()), None)
        else:
            raise TypeError(f"cannot evaluate at {x!r}")
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shift(self, c):
        """Substitute var -> var + c."""
        return self.evaluate(Polynomial([FieldElement.of(c), ONE], self.var))

    def rename(self, var):
        return Polynomial(self.coeffs, var)

    def reverse(self, n=None, var=None):
        """s**n * p(1/s): coefficient reversal padded to degree n."""
        if n is None:
            n = int(self.degree) if self.coeffs else 0
        if self.coeffs and n < self.degree:
            raise ValueError("reversal degree too small")
        out = [ZERO] * (n + 1)
        for i, c in enumerate(self.coeffs):
            out[n - i] = c
        return Polynomial(out, var or self.var)

    def valuation(self, q=None):
        """Order of vanishing at the monic polynomial q (default: at the variable)."""
        if self.is_zero():
            return INF
        if q is None or (q.degree == 1 and not q[0]):
            for i, c in enumerate(self.coeffs):
                if c:
                    return i
        n = 0
        p = self
        while True:
            quo, rem = divmod(p, q)
            if not rem.is_zero():
                return n
            n += 1
            p = quo

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def content_primitive(self):
        """(content, primitive) over Q: primitive has integer coprime coefficients.

        Only meaningful for rational-coefficient polynomials; quadratic
        coefficients return content 1.
        """
        if self.is_zero():
            return Fraction(1), self
        if any(not c.is_rational() for c in self.coeffs):
            return Fraction(1), self
        from math import gcd as igcd
        num = 0
        den = 1
        for c in self.coeffs:
            num = igcd(num, c.rational.numerator)
            den = den * c.rational.denominator // igcd(den, c.rational.denominator)
        cont = Fraction(num, den)
        if self.lc().rational < 0:
            cont = -cont
        return cont, self * FieldElement(cont).inverse()

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                terms.append(f"{c}")
            else:
                v = self.var if i == 1 else f"{self.var}^{i}"
                if c == 1:
                    terms.append(v)
                elif c == -1:
                    terms.append(f"-{v}")
                else:
                    cs = f"{c}"
                    if "+" in cs[1:] or "-" in cs[1:] or "/" in cs:
                        cs = f"({cs})"
                    terms.append(f"{cs}*{v}")
        s = terms[0]
        for tm in terms[1:]:
            s += tm if tm.startswith("-") else "+" + tm
        return s


class Place:
    """A closed point of the projective base line: a monic irreducible
    polynomial, or the point at infinity."""

    __slots__ = ("poly",)

    def __init__(self, poly=None):
        if poly is not None:
            if poly.is_constant():
                raise ValueError("finite place needs a nonconstant polynomial")
            poly = poly.monic()
        self.poly = poly

    @staticmethod
    def infinity():
        return Place(None)

    @staticmethod
    def at(c, var="t"):
        return Place(Polynomial([-FieldElement.of(c), ONE], var))

    def is_infinity(self):
        return self.poly is None

    @property
    def degree(self):
        return 1 if self.poly is None else int(self.poly.degree)

    def __eq__(self, other):
        if not isinstance(other, Place):
            return NotImplemented
        return self.poly == other.poly if self.poly is not None else other.poly is None

    def __hash__(self):
        return hash(self.poly)

    def sort_key(self):
        if self.poly is None:
            return (1,)
        return (0, int(self.poly.degree),
                tuple((c.a, c.b) for c in self.poly.coeffs))

    def __repr__(self):
        return "infinity" if self.poly is None else f"({self.poly})"


class RationalFunction:
    """Reduced quotient of polynomials with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if isinstance(num, (int, Fraction, FieldElement)):
            num = Polynomial.constant(num, den.var if den is not None else "t")
        if den is None:
            den = Polynomial.constant(1, num.var)
        if isinstance(den, (int, Fraction, FieldElement)):
            den = Polynomial.constant(den, num.var)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        g = num.gcd(den)
        if not g.is_constant():
            num = num.exact_div(g)
            den = den.exact_div(g)
        c = den.lc().inverse()
        self.num = num * c
        self.den = den * c

    @staticmethod
    def of(x, var="t"):
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, Polynomial):
            return RationalFunction(x)
        return RationalFunction(Polynomial.constant(x, var))

    def var(self):
        return self.num.var if not self.num.is_constant() else self.den.var

    def is_zero(self):
        return self.num.is_zero()

    def is_constant(self):
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num.lc() if not self.num.is_zero() else ZERO

    def is_polynomial(self):
        return self.den.is_constant()

    def as_polynomial(self):
        if not self.is_polynomial():
            raise ValueError(f"{self} is not a polynomial")
        return self.num

    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, FieldElement, Polynomial)):
            other = RationalFunction.of(other, self.var())
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        other = RationalFunction.of(other, self.var())
        return RationalFunction(self.num * other.den + other.num * self.den,
                                self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-RationalFunction.of(other, self.var()))

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        other = RationalFunction.of(other, self.var())
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        return self * RationalFunction.of(other, self.var()).inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = RationalFunction.of(1, self.var())
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def evaluate(self, x):
        d = self.den.evaluate(x)
        if isinstance(d, FieldElement) and not d:
            raise ZeroDivisionError(f"pole at {x}")
        n = self.num.evaluate(x)
        if isinstance(d, (Polynomial, RationalFunction)):
            return RationalFunction.of(n, self.var()) / RationalFunction.of(d, self.var())
        return n / d

    def compose(self, x):
        """Substitute the variable by a polynomial or rational function."""
        if isinstance(x, Polynomial):
            x = RationalFunction(x)
        num = self.num.evaluate(x)
        den = self.den.evaluate(x)
        return RationalFunction.of(num, x.var()) / RationalFunction.of(den, x.var())

    def derivative(self):
        return RationalFunction(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den)

    def valuation(self, place):
        """Order of self at a place; +inf for the zero function."""
        if self.num.is_zero():
            return INF
        if place.is_infinity():
            return int(self.den.degree - self.num.degree)
        return self.num.valuation(place.poly) - self.den.valuation(place.poly)

    def shift(self, c):
        return RationalFunction(self.num.shift(c), self.den.shift(c))

    def rename(self, var):
        return RationalFunction(self.num.rename(var), self.den.rename(var))

    def __repr__(self):
        if self.den.is_constant():
            return repr(self.num)
        ns = repr(self.num)
        if "+" in ns[1:] or "-" in ns[1:]:
            ns = f"({ns})"
        return f"{ns}/({self.den})"


# -- truncated power series helpers -------------------------------------------
#
# A series is a plain list of FieldElement coefficients [c0, c1, ...] modulo
# t**N; these are only used locally (component identification), so no class.


def series_of(r, n):
    """Expand a rational function regular at t=0 as a series mod t**n."""
    num = list(r.num.coeffs)
    den = list(r.den.coeffs)
    if not den or not den[0]:
        raise ZeroDivisionError("series expansion at a pole")
    return series_mul(num, series_inv(den, n), n)


def series_mul(a, b, n):
    out = [ZERO] * n
    for i, x in enumerate(a[:n]):
        if not x:
            continue
        for j, y in enumerate(b[: n - i]):
            out[i + j] = out[i + j] + x * y
    return out


def series_inv(a, n):
    if not a or not a[0]:
        raise ZeroDivisionError("series inverse needs a unit")
    inv0 = a[0].inverse()
    out = [ZERO] * n
    out[0] = inv0
    for k in range(1, n):
        s = ZERO
        for i in range(1, min(k, len(a) - 1) + 1):
            s = s + a[i] * out[k - i]
        out[k] = -inv0 * s
    return out


def series_sqrt(a, n, root0):
    """Square root of a unit series with prescribed constant-term root."""
    if not a or not a[0]:
        raise ValueError("series sqrt needs a unit")
    if root0 * root0 != a[0]:
        raise ValueError("root0 is not a square root of the constant term")
    out = [ZERO] * n
    out[0] = root0
    half = FieldElement(Fraction(1, 2))
    inv0 = root0.inverse()
    for k in range(1, n):
        s = a[k] if k < len(a) else ZERO
        for i in range(1, k):
            s = s - out[i] * out[k - i]
        out[k] = half * inv0 * s
    return out


def series_val(a):
    for i, c in enumerate(a):
        if c:
            return i
    return INF
