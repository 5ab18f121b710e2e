"""Command-line interface.

Exit codes: 0 success / all assertions pass, 1 assertion failure,
2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .parse import ParseError, parse_model, parse_rational
from .surface import Surface
from .section import Section, height, height_report
from .twist import BaseChangeError, enriques_check, pullback, twist
from .intlat import (parse_lattice_expr, discriminant_group,
                     orthogonal_complement, overlattice, roots)
from .bench import REGISTRY, emit_report, run_example


def _surface(model, var=None, radicand=None):
    m = parse_model(model, var)
    return Surface(m[0], m[1], m[2], radicand=radicand)


def _parse_point(text, var):
    """Parse a section given as "(x, y)" with a top-level comma."""
    s = text.strip()
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    depth = 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            return (parse_rational(s[:i], var), parse_rational(s[i + 1:], var))
    raise ParseError("section must be given as (x, y)")


def _print_model(S):
    print(f"y^2 = x^3 + ({S.A})*x + ({S.B})  over var {S.var!r}")


def _cmd_classify(args):
    S = _surface(args.model, args.var, args.radicand)
    summary = S.classify()
    if args.format == "json":
        print(json.dumps(summary.to_dict(), indent=2, default=str))
    else:
        print(f"chi = {summary.chi}, Euler number = {summary.euler_total},"
              f" kind = {summary.kind}")
        for f in summary.fibers:
            if not f.is_smooth():
                print(f"  {f.name:5s} at {f.place}  (Euler {f.euler},"
                      f" degree {f.place.degree})")
    return 0


def _cmd_height(args):
    S = _surface(args.model, args.var, args.radicand)
    for text in args.section:
        x, y = _parse_point(text, S.var)
        P = Section(S, x, y)
        if not P.verify():
            print(f"section {text} does not lie on the surface",
                  file=sys.stderr)
            return 1
        rep = height_report(P)
        print(f"section {text}: h = {height(P)}")
        if args.format == "json":
            print(json.dumps(rep, indent=2, default=str))
    return 0


def _cmd_basechange(args):
    S = _surface(args.model, args.var, args.radicand)
    X = pullback(S, args.f)
    _print_model(X)
    for f in X.classify().fibers:
        if not f.is_smooth():
            print(f"  {f.name:5s} at {f.place}")
    return 0


def _cmd_twist(args):
    S = _surface(args.model, args.var, args.radicand)
    X = twist(S, args.d)
    _print_model(X)
    for f in X.classify().fibers:
        if not f.is_smooth():
            print(f"  {f.name:5s} at {f.place}")
    return 0


def _cmd_enriques(args):
    S = _surface(args.model, args.var, args.radicand)
    x, y = _parse_point(args.section, S.var)
    P = Section(S, x, y)
    if not P.verify():
        print("section does not lie on the surface", file=sys.stderr)
        return 1
    deck = parse_rational(args.deck, S.var) if args.deck else None
    report = enriques_check(S, P, deck=deck)
    print(report)
    return 0 if report.free else 1


def _cmd_lattice(args):
    L = parse_lattice_expr(args.expr)
    query = args.query
    if query == "disc":
        print(L.disc())
    elif query == "dgroup":
        dg = discriminant_group(L)
        print("invariant factors:", dg.invariant_factors)
    elif query == "roots":
        for v in roots(L):
            print(list(v))
    elif query == "complement":
        if not args.sublattice:
            print("complement requires --sublattice", file=sys.stderr)
            return 2
        M = parse_lattice_expr(args.sublattice)
        comp, _emb = orthogonal_complement(L, M)
        print("rank:", comp.rank, "disc:", comp.disc())
        for row in comp.gram:
            print(" ", list(row))
    elif query == "overlattice":
        if not args.glue:
            print("overlattice requires --glue", file=sys.stderr)
            return 2
        from fractions import Fraction
        glue = [Fraction(tok) for tok in args.glue.split(",")]
        over = overlattice(L, glue)
        print("rank:", over.rank, "disc:", over.disc())
        for row in over.gram:
            print(" ", list(row))
    else:  # default: summary
        print("rank:", L.rank, "disc:", L.disc())
    return 0


def _cmd_verify(args):
    if args.all:
        ids = sorted(REGISTRY)
    elif args.example_id:
        ids = [args.example_id]
    else:
        print("verify requires an example id or --all", file=sys.stderr)
        return 2
    ok = True
    for case_id in ids:
        report = run_example(case_id)
        sys.stdout.write(emit_report(report, args.format))
        ok = ok and report.passed
    return 0 if ok else 1


def build_parser():
    p = argparse.ArgumentParser(
        prog="forge",
        description="Exact computations with elliptic surfaces over the"
                    " projective line and even integral lattices.")
    sub = p.add_subparsers(dest="command", required=True)

    def add_model_opts(sp):
        sp.add_argument("model", help='Weierstrass model, e.g.'
                        ' "y^2 = x^3 + t*x + 1"')
        sp.add_argument("--var", default=None, help="base variable name")
        sp.add_argument("--radicand", type=int, default=None,
                        help="quadratic field radicand d for Q(sqrt(d))")

    sp = sub.add_parser("classify", help="Kodaira types of all fibers")
    add_model_opts(sp)
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=_cmd_classify)

    sp = sub.add_parser("height", help="canonical heights of sections")
    add_model_opts(sp)
    sp.add_argument("section", nargs="+", help='sections as "(x, y)"')
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=_cmd_height)

    sp = sub.add_parser("basechange", help="degree-2 base change")
    add_model_opts(sp)
    sp.add_argument("--f", required=True, help="degree-2 rational map")
    sp.set_defaults(func=_cmd_basechange)

    sp = sub.add_parser("twist", help="quadratic twist")
    add_model_opts(sp)
    sp.add_argument("--d", required=True, help="twisting polynomial")
    sp.set_defaults(func=_cmd_twist)

    sp = sub.add_parser("enriques", help="fixed-point-freeness check")
    add_model_opts(sp)
    sp.add_argument("--deck", default=None, help="deck involution map")
    sp.add_argument("--section", required=True, help='section as "(x, y)"')
    sp.set_defaults(func=_cmd_enriques)

    sp = sub.add_parser("lattice", help="even lattice computations")
    sp.add_argument("expr", help='lattice expression, e.g. "U + 2*E7(-1)"')
    sp.add_argument("query", nargs="?", default=None,
                    choices=("disc", "dgroup", "complement", "roots",
                             "overlattice"))
    sp.add_argument("--sublattice", default=None,
                    help="sublattice expression for complement")
    sp.add_argument("--glue", default=None,
                    help="comma-separated glue vector for overlattice")
    sp.set_defaults(func=_cmd_lattice)

    sp = sub.add_parser("verify", help="run registered example reproductions")
    sp.add_argument("example_id", nargs="?", default=None)
    sp.add_argument("--all", action="store_true")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=_cmd_verify)

    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (ParseError, BaseChangeError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
