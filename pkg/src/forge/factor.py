"""Factorization of polynomials over Q and Q(sqrt(d)), and square classification.

The heavy lifting (Zassenhaus/Trager over the rationals and their quadratic
extensions) is delegated to sympy; everything that crosses the boundary is
converted exactly.
"""

from __future__ import annotations

from fractions import Fraction

import sympy

from .field import FieldElement, ONE, squarefree_normalize
from .poly import Polynomial, RationalFunction

_SYMS = {}


def _sym(var):
    if var not in _SYMS:
        _SYMS[var] = sympy.Symbol(var)
    return _SYMS[var]


def _field_radicand(p):
    for c in p.coeffs:
        if c.d is not None:
            return c.d
    return None


def _elem_to_sympy(c):
    a = sympy.Rational(c.a.numerator, c.a.denominator)
    if c.b == 0:
        return a
    return a + sympy.Rational(c.b.numerator, c.b.denominator) * sympy.sqrt(c.d)


def _elem_from_sympy(e, d):
    e = sympy.expand(e)
    if d is None:
        if not e.is_Rational:
            raise ValueError(f"unexpected coefficient {e}")
        return FieldElement(Fraction(e.p, e.q))
    sd = sympy.sqrt(d)
    b = e.coeff(sd)
    a = sympy.expand(e - b * sd)
    if not (a.is_Rational and b.is_Rational):
        raise ValueError(f"coefficient {e} is not in Q(sqrt({d}))")
    return FieldElement(Fraction(a.p, a.q), Fraction(b.p, b.q), d if b else None)


def _poly_to_sympy(p, x):
    return sum((_elem_to_sympy(c) * x ** i for i, c in enumerate(p.coeffs)),
               sympy.Integer(0))


def _poly_from_sympy(sp, var, d):
    coeffs = sp.all_coeffs()[::-1]
    return Polynomial([_elem_from_sympy(c, d) for c in coeffs], var)


def factor_squarefree(p, d=None):
    """Factor a nonzero polynomial into monic irreducibles over its field.

    Returns (constant, [(factor, multiplicity), ...]) with the factors monic,
    pairwise distinct, ordered by degree then coefficients.  d forces
    factorization over Q(sqrt(d)) even for rational input.
    """
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if d is None:
        d = _field_radicand(p)
    if p.is_constant():
        return p.lc(), []
    x = _sym(p.var)
    expr = _poly_to_sympy(p, x)
    if d is not None:
        dom = sympy.QQ.algebraic_field(sympy.sqrt(d))
        sp = sympy.Poly(expr, x, domain=dom)
    else:
        sp = sympy.Poly(expr, x, domain=sympy.QQ)
    _, factors = sp.factor_list()
    out = []
    const = p.lc()
    for f, m in factors:
        q = _poly_from_sympy(f, p.var, d).monic()
        out.append((q, int(m)))
    out.sort(key=lambda fm: (int(fm[0].degree),
                             tuple((c.a, c.b) for c in fm[0].coeffs)))
    check = Polynomial.constant(const, p.var)
    for q, m in out:
        check = check * q ** m
    if check != p:
        raise AssertionError("factorization does not reconstruct the input")
    return const, out


def is_irreducible(p, d=None):
    if p.is_constant():
        return False
    _, fs = factor_squarefree(p, d)
    return len(fs) == 1 and fs[0][1] == 1


def roots_in_field(p, d=None):
    """All roots of p lying in the coefficient field, with multiplicities."""
    _, fs = factor_squarefree(p, d)
    return [(-f[0], m) for f, m in fs if f.degree == 1]


def square_classify(r, d=None):
    """Write a nonzero rational function as c * g**2 with c a squarefree
    constant, or return None when some factor has odd multiplicity."""
    if isinstance(r, Polynomial):
        r = RationalFunction(r)
    if r.is_zero():
        raise ValueError("cannot classify zero")
    cn, fn = factor_squarefree(r.num, d)
    cd, fd = factor_squarefree(r.den, d)
    g = RationalFunction.of(1, r.var())
    for f, m in fn:
        if m % 2:
            return None
        g = g * RationalFunction(f) ** (m // 2)
    for f, m in fd:
        if m % 2:
            return None
        g = g / RationalFunction(f) ** (m // 2)
    c0, s = squarefree_normalize(cn / cd)
    return c0, g * s


def field_sqrt_rf(r, d=None):
    """Square root of a rational function in its own field, or None."""
    cls = square_classify(r, d)
    if cls is None:
        return None
    c, g = cls
    root = c.sqrt_in(d)
    if root is None:
        return None
    return g * root
