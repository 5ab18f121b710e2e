"""Exact coefficient fields: the rationals and a fixed quadratic extension Q(sqrt(d))."""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

from sympy import factorint


def squarefree_decompose(n):
    """Write a nonzero integer as s*k**2 with s squarefree (s carries the sign)."""
    if n == 0:
        raise ValueError("zero has no squarefree decomposition")
    s = -1 if n < 0 else 1
    k = 1
    for p, e in factorint(abs(n)).items():
        if e % 2:
            s *= p
        k *= p ** (e // 2)
    return s, k


def fraction_sqrt(q):
    """Exact square root of a Fraction, or None."""
    q = Fraction(q)
    if q < 0:
        return None
    rn = isqrt(q.numerator)
    rd = isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


class FieldElement:
    """a + b*sqrt(d) with rational a, b.

    d is a squarefree integer (not 0 or 1), or None for plain rationals.
    Values are immutable by convention; all arithmetic is exact.  Elements
    with distinct radicands never mix (one quadratic extension per context).
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b=0, d=None):
        a = Fraction(a)
        b = Fraction(b)
        if b == 0:
            d = None
        else:
            if d is None:
                raise ValueError("nonzero sqrt coefficient requires a radicand")
            d = int(d)
            if d in (0, 1):
                raise ValueError("radicand must be squarefree and != 0, 1")
        self.a = a
        self.b = b
        self.d = d

    # -- coercion helpers ---------------------------------------------------

    @staticmethod
    def of(x):
        if isinstance(x, FieldElement):
            return x
        return FieldElement(Fraction(x))

    def _join(self, other):
        if not isinstance(other, FieldElement):
            if isinstance(other, (int, Fraction)):
                other = FieldElement(Fraction(other))
            else:
                return None, None
        if self.d is not None and other.d is not None and self.d != other.d:
            raise ValueError(f"cannot mix sqrt({self.d}) with sqrt({other.d})")
        return other, self.d if self.d is not None else other.d

    # -- predicates / accessors ---------------------------------------------

    def is_rational(self):
        return self.b == 0

    @property
    def rational(self):
        if self.b != 0:
            raise ValueError(f"{self} is not rational")
        return self.a

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def conjugate(self):
        return FieldElement(self.a, -self.b, self.d)

    def norm(self):
        """Field norm a**2 - d*b**2 as a Fraction."""
        if self.b == 0:
            return self.a * self.a
        return self.a * self.a - self.d * self.b * self.b

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        other, d = self._join(other)
        if other is None:
            return NotImplemented
        return FieldElement(self.a + other.a, self.b + other.b, d)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(-self.a, -self.b, self.d)

    def __sub__(self, other):
        other, d = self._join(other)
        if other is None:
            return NotImplemented
        return FieldElement(self.a - other.a, self.b - other.b, d)

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        other, d = self._join(other)
        if other is None:
            return NotImplemented
        a = self.a * other.a
        if d is not None:
            a += d * self.b * other.b
        return FieldElement(a, self.a * other.b + self.b * other.a, d)

    __rmul__ = __mul__

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero field element")
        return FieldElement(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        other, _ = self._join(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = FieldElement(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.a == other.a and self.b == other.b and (
            self.b == 0 or self.d == other.d)

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    # -- square roots ----------------------------------------------------------

    def sqrt_in(self, d=None):
        """A square root of self in Q or Q(sqrt(d)), or None if there is none.

        d defaults to the element's own radicand.  Of the two roots, the one
        with positive leading part is returned (deterministic choice).
        """
        if d is None:
            d = self.d
        if self.b == 0:
            r = fraction_sqrt(self.a)
            if r is not None:
                return FieldElement(r)
            if d is not None:
                r = fraction_sqrt(self.a / d)
                if r is not None:
                    return FieldElement(0, r, d)
            return None
        if d != self.d:
            return None
        # solve (x + y*sqrt(d))**2 = a + b*sqrt(d)
        disc = fraction_sqrt(self.a * self.a - d * self.b * self.b)
        if disc is None:
            return None
        for x2 in ((self.a + disc) / 2, (self.a - disc) / 2):
            x = fraction_sqrt(x2)
            if x is not None and x != 0:
                y = self.b / (2 * x)
                root = FieldElement(x, y, d)
                return root if (root.a, root.b) > (0, 0) else -root
        return None

    # -- display ----------------------------------------------------------------

    def __repr__(self):
        if self.b == 0:
            return str(self.a)
        parts = []
        if self.a != 0:
            parts.append(str(self.a))
        bpart = f"sqrt({self.d})"
        if self.b == 1:
            parts.append(bpart)
        elif self.b == -1:
            parts.append(f"-{bpart}")
        else:
            parts.append(f"{self.b}*{bpart}")
        s = parts[0]
        for p in parts[1:]:
            s += p if p.startswith("-") else "+" + p
        return s


ZERO = FieldElement(0)
ONE = FieldElement(1)


def squarefree_normalize(c):
    """Split a nonzero FieldElement as (c0, s) with c = c0 * s**2.

    For rational c the returned c0 is a squarefree integer.  For genuinely
    quadratic c only the rational square content is extracted.
    """
    if not c:
        raise ValueError("zero cannot be normalized")
    if c.is_rational():
        q = c.rational
        s0, k = squarefree_decompose(q.numerator * q.denominator)
        return FieldElement(s0), FieldElement(Fraction(k, q.denominator))
    # pull the square part out of the rational content of (a, b)
    num = (c.a.numerator * c.b.denominator, c.b.numerator * c.a.denominator)
    den = c.a.denominator * c.b.denominator
    from math import gcd
    g = gcd(num[0], num[1])
    _, k = squarefree_decompose(g) if g else (1, 1)
    s = FieldElement(Fraction(k, den))
    return c / (s * s), s
