"""Parsers for polynomial / rational-function expressions and model strings.

Grammar: integer and fraction literals, one variable symbol, ``+ - * / ^``
(``**`` is accepted for ``^``), parentheses, and a ``sqrt(d)`` token with an
integer radicand; at most one distinct radicand per expression.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .field import FieldElement, squarefree_decompose
from .poly import Polynomial, RationalFunction

_TOKEN = re.compile(r"\s*(\d+|[A-Za-z_][A-Za-z_0-9]*|\*\*|[()+\-*/^,])")


class ParseError(ValueError):
    pass


def tokenize(s):
    out = []
    pos = 0
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m:
            if s[pos:].strip():
                raise ParseError(f"bad character at {s[pos:]!r}")
            break
        out.append(m.group(1))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens, var=None):
        self.tokens = tokens
        self.pos = 0
        self.var = var
        self.radicand = None

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self):
        t = self.peek()
        if t is None:
            raise ParseError("unexpected end of expression")
        self.pos += 1
        return t

    def expect(self, t):
        got = self.next()
        if got != t:
            raise ParseError(f"expected {t!r}, got {got!r}")

    def parse(self):
        e = self.expr()
        if self.peek() is not None:
            raise ParseError(f"trailing input at {self.tokens[self.pos:]}")
        return e

    def expr(self):
        if self.peek() == "-":
            self.next()
            acc = -self.term()
        else:
            acc = self.term()
        while self.peek() in ("+", "-"):
            op = self.next()
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self):
        acc = self.power()
        while self.peek() in ("*", "/"):
            op = self.next()
            t = self.power()
            acc = acc * t if op == "*" else acc / t
        return acc

    def power(self):
        base = self.atom()
        if self.peek() in ("^", "**"):
            self.next()
            neg = False
            if self.peek() == "-":
                self.next()
                neg = True
            e = self.next()
            if not e.isdigit():
                raise ParseError(f"bad exponent {e!r}")
            n = int(e)
            return base ** (-n if neg else n)
        return base

    def atom(self):
        t = self.next()
        if t == "(":
            e = self.expr()
            self.expect(")")
            return e
        if t == "-":
            return -self.atom()
        if t.isdigit():
            return self._const(FieldElement(Fraction(int(t))))
        if t == "sqrt":
            self.expect("(")
            neg = False
            if self.peek() == "-":
                self.next()
                neg = True
            n = self.next()
            if not n.isdigit():
                raise ParseError(f"bad radicand {n!r}")
            self.expect(")")
            n = -int(n) if neg else int(n)
            s, k = squarefree_decompose(n)
            if s == 1:
                return self._const(FieldElement(k))
            if self.radicand is None:
                self.radicand = s
            elif self.radicand != s:
                raise ParseError("multiple distinct radicands are not supported")
            return self._const(FieldElement(0, k, s))
        if re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", t):
            if self.var is None:
                self.var = t
            elif t != self.var:
                raise ParseError(f"unexpected symbol {t!r} (variable is {self.var!r})")
            return RationalFunction(Polynomial.gen(self.var))
        raise ParseError(f"unexpected token {t!r}")

    def _const(self, c):
        return RationalFunction(Polynomial.constant(c, self.var or "t"))


def parse_rational(s, var=None):
    """Parse an expression string into a RationalFunction."""
    p = _Parser(tokenize(s), var)
    e = p.parse()
    if var is not None:
        e = e.rename(var)
    elif p.var is not None:
        e = e.rename(p.var)
    return e


def parse_polynomial(s, var=None):
    e = parse_rational(s, var)
    return e.as_polynomial()


_MODEL = re.compile(r"^\s*([A-Za-z_][A-Za-z_0-9]*)\s*(?:\^|\*\*)?\s*2\s*=\s*(.*)$")


def parse_model(s, var=None):
    """Parse "y^2 = x^3 + a2*x^2 + a4*x + a6" into coefficient polynomials.

    The fiber x-coordinate is always called x; the symbol on the left is the
    y-coordinate; the remaining symbol is the base variable.  Returns
    (a2, a4, a6, var).
    """
    m = _MODEL.match(s)
    if not m or m.group(1) == "x":
        raise ParseError("model must have the form 'y^2 = ...'")
    rhs = m.group(2)
    toks = tokenize(rhs)
    syms = {t for t in toks if re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", t)
            and t not in ("x", "sqrt")}
    if var is None:
        if len(syms) > 1:
            raise ParseError(f"ambiguous base variable: {sorted(syms)}")
        var = syms.pop() if syms else "t"
    elif syms - {var}:
        raise ParseError(f"unexpected symbols {sorted(syms - {var})}")
    # collect coefficients of x^k by synthetic substitution: parse with x as
    # an auxiliary outer variable via repeated differentiation is fragile;
    # instead parse the rhs as a polynomial in x with rational-function
    # coefficients by splitting on a fresh parser pass.
    coeffs = _collect_x(toks, var)
    for k in sorted(coeffs):
        if k > 3:
            raise ParseError("degree in x exceeds 3")
    if coeffs.get(3) != RationalFunction.of(1, var):
        raise ParseError("coefficient of x^3 must be 1")
    out = []
    for k in (2, 1, 0):
        c = coeffs.get(k, RationalFunction.of(0, var))
        out.append(c.rename(var))
    return out[0], out[1], out[2], var


def _collect_x(tokens, var):
    """Evaluate an expression in x and the base variable as a polynomial in x."""
    parser = _XParser(tokens, var)
    poly = parser.parse()
    return {k: c for k, c in poly.items() if c}


class _XParser(_Parser):
    """Same grammar, but values are dicts {x-degree: RationalFunction}."""

    def __init__(self, tokens, basevar):
        super().__init__(tokens, basevar)
        self.basevar = basevar

    def _wrap(self, rf):
        return {0: rf}

    def _const(self, c):
        return self._wrap(RationalFunction(Polynomial.constant(c, self.basevar)))

    def atom(self):
        t = self.peek()
        if t == "x":
            self.next()
            return {1: RationalFunction.of(1, self.basevar)}
        v = super().atom()
        if isinstance(v, RationalFunction):
            return self._wrap(v)
        return v

    def expr(self):
        if self.peek() == "-":
            self.next()
            acc = _dneg(self.term())
        else:
            acc = self.term()
        while self.peek() in ("+", "-"):
            op = self.next()
            t = self.term()
            acc = _dadd(acc, t if op == "+" else _dneg(t))
        return acc

    def term(self):
        acc = self.power()
        while self.peek() in ("*", "/"):
            op = self.next()
            t = self.power()
            acc = _dmul(acc, t) if op == "*" else _ddiv(acc, t)
        return acc

    def power(self):
        base = self.atom()
        if self.peek() in ("^", "**"):
            self.next()
            e = self.next()
            if not e.isdigit():
                raise ParseError(f"bad exponent {e!r}")
            out = {0: RationalFunction.of(1, self.basevar)}
            for _ in range(int(e)):
                out = _dmul(out, base)
            return out
        return base


def _dneg(a):
    return {k: -v for k, v in a.items()}


def _dadd(a, b):
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + v
    return out


def _dmul(a, b):
    out = {}
    for i, u in a.items():
        for j, v in b.items():
            out[i + j] = out.get(i + j, 0) + u * v
    return out


def _ddiv(a, b):
    if list(b) not in ([0], []):
        raise ParseError("division by an expression containing x")
    inv = b[0].inverse()
    return {k: v * inv for k, v in a.items()}
