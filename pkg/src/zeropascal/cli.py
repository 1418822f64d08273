"""Command-line entry point: print matrices and series, run verification suites.

Exit status is 0 on success, 1 when a verification fails (a JSON failure report
is written) and 2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from zeropascal.block_fractal import FractalSeries, fractal_circ_mul, fractal_expand, fractal_log
from zeropascal.errors import ZeroPascalError
from zeropascal.fps import ParamPolynomial, Series, format_rational
from zeropascal.riordan import GroupParameter, RiordanSpec, pascal_matrix, riordan_matrix
from zeropascal.rgroup import RElement, is_pseudo_involution, relement_inv, relement_mul, verify_abel
from zeropascal.suites import DEFAULT_SEED, SUITES, run_suite
from zeropascal.triangle import LowerTriangular
from zeropascal.zero_pascal import parse_coefficients, parse_spec, zp_entry

FORMATS = ("pretty", "json", "csv")


class UsageError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _order(text: str) -> int:
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("order must be >= 0")
    return n


def format_series(s: Series, fmt: str) -> str:
    if fmt == "json":
        return s.to_json()
    if fmt == "csv":
        return ",".join(s.to_strings())
    terms = []
    for n, c in enumerate(s.coeffs):
        if c == 0:
            continue
        mono = "" if n == 0 else ("x" if n == 1 else f"x^{n}")
        if not mono:
            terms.append(format_rational(c))
        elif c == 1:
            terms.append(mono)
        elif c == -1:
            terms.append(f"-{mono}")
        else:
            terms.append(f"{format_rational(c)}*{mono}")
    body = " + ".join(terms).replace("+ -", "- ") if terms else "0"
    return f"{body} + O(x^{s.order + 1})"


def format_matrix(M: LowerTriangular, fmt: str) -> str:
    if fmt == "json":
        return M.to_json()
    if fmt == "csv":
        return M.to_csv().rstrip("\n")
    return M.to_pretty()


def _symbolic_pretty(spec, N: int) -> str:
    cells = []
    for n in range(N + 1):
        row = []
        for m in range(N + 1):
            if m > n:
                row.append("0")
                continue
            v = zp_entry(spec, n, m)
            row.append(v.format("phi") if isinstance(v, ParamPolynomial) else format_rational(v))
        cells.append(row)
    width = max(len(c) for row in cells for c in row)
    return "\n".join(" ".join(c.rjust(width) for c in row) for row in cells)


def _spec_is_symbolic(spec) -> bool:
    return any(isinstance(getattr(f, "phi", None), ParamPolynomial) for f in spec.factors)


# -- subcommands ---------------------------------------------------------------


def cmd_pascal(args) -> tuple:
    c = GroupParameter(parse_coefficients(args.c, args.order, sep=","), strict=False)
    return 0, format_matrix(pascal_matrix(c, args.order), args.format)


def cmd_zero_pascal(args) -> tuple:
    spec = parse_spec(args.spec, args.order)
    if _spec_is_symbolic(spec):
        if args.format != "pretty":
            raise UsageError("symbolic phi is only available with --format pretty")
        return 0, _symbolic_pretty(spec, args.order)
    from zeropascal.zero_pascal import zp_matrix

    return 0, format_matrix(zp_matrix(spec, args.order), args.format)


def cmd_riordan(args) -> tuple:
    N = args.order
    f = parse_coefficients(args.f, N)
    g = parse_coefficients(args.g, N)
    c = None if args.c is None else GroupParameter(parse_coefficients(args.c, N), strict=False)
    return 0, format_matrix(riordan_matrix(RiordanSpec(f, g, c), N), args.format)


def cmd_fractal(args) -> tuple:
    base = tuple(_rational(t) for t in args.base.split(","))
    fs = FractalSeries(args.q, base, args.order)
    if args.op == "expand":
        out = fractal_expand(fs)
    elif args.op == "log":
        out = fractal_log(fs)
    else:
        other = fs if args.other is None else FractalSeries(args.q, tuple(_rational(t) for t in args.other.split(",")), args.order)
        out = fractal_expand(fractal_circ_mul(fs, other))
    return 0, format_series(out, args.format)


def _element(b_text, a_text, spec, N) -> RElement:
    if b_text is None or a_text is None:
        raise UsageError("this operation needs both --b and --a")
    return RElement(parse_coefficients(b_text, N), parse_coefficients(a_text, N), spec)


def cmd_rgroup(args) -> tuple:
    if args.op == "abel":
        rep = verify_abel(args.q, args.nmax, args.phi, args.beta)
        obj = rep.to_json_obj()
        return (0 if rep.passed else 1), json.dumps(obj, indent=1 if args.format == "pretty" else None)
    N = args.order
    spec = parse_spec(args.spec, N)
    if _spec_is_symbolic(spec):
        raise UsageError("group computations need a concrete rational phi")
    e = _element(args.b, args.a, spec, N)
    if args.op == "mul":
        f = _element(args.b2 or args.b, args.a2 or args.a, spec, N)
        return 0, format_matrix(relement_mul(e, f).matrix(N), args.format)
    if args.op == "inv":
        return 0, format_matrix(relement_inv(e).matrix(N), args.format)
    passed = is_pseudo_involution(e, N)
    obj = {"identity": "pseudo-involution", "n": N, "pass": passed}
    return (0 if passed else 1), json.dumps(obj)


def cmd_verify(args) -> tuple:
    rep = run_suite(args.suite, args.order, args.seed)
    if rep.passed:
        text = json.dumps(rep.to_json_obj(), indent=1) if args.format == "json" else (
            f"{rep.suite}: {len(rep.checks)} checks passed"
        )
        return 0, text
    return 1, json.dumps(rep.to_json_obj(failures_only=True), indent=1)


# -- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", type=_order, default=None, help="truncation order N (rows 0..N)")
    common.add_argument("--format", choices=FORMATS, default="pretty")
    common.add_argument("--out", default=None, help="write output to this path instead of stdout")

    parser = argparse.ArgumentParser(prog="zeropascal", description="Exact computations with zero generalized Pascal matrices.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pascal", parents=[common], help="generalized Pascal matrix P_c")
    p.add_argument("--c", default="exp", help="group parameter: 'exp', 'geom' or a list like 1,1,1/2")
    p.set_defaults(func=cmd_pascal, default_order=6)

    p = sub.add_parser("zero-pascal", parents=[common], help="matrix of a zero Pascal spec")
    p.add_argument("--spec", required=True, help="e.g. 'block:q=2,phi=0 * cparam:exp'")
    p.set_defaults(func=cmd_zero_pascal, default_order=8)

    p = sub.add_parser("riordan", parents=[common], help="generalized Riordan matrix (f, xg)")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--c", default=None, help="group parameter; ordinary Riordan matrix if omitted")
    p.set_defaults(func=cmd_riordan, default_order=6)

    p = sub.add_parser("fractal", aliases=["fractal-series"], parents=[common], help="fractal series operations")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--base", required=True, help="first q coefficients, e.g. 1,1")
    p.add_argument("--other", default=None, help="second factor's base for --op mul (defaults to --base)")
    p.add_argument("--op", choices=("expand", "log", "mul"), default="expand")
    p.set_defaults(func=cmd_fractal, default_order=16)

    p = sub.add_parser("rgroup", parents=[common], help="the group R(P0) and the digit Abel identities")
    p.add_argument("op", choices=("mul", "inv", "pseudo-check", "abel"))
    p.add_argument("--spec", default="block:q=2,phi=0")
    p.add_argument("--b", default=None)
    p.add_argument("--a", default=None)
    p.add_argument("--b2", default=None, help="second factor for mul (defaults to --b)")
    p.add_argument("--a2", default=None, help="second factor for mul (defaults to --a)")
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--nmax", type=int, default=16)
    p.add_argument("--phi", type=_rational, default=Fraction(1))
    p.add_argument("--beta", type=_rational, default=Fraction(1))
    p.set_defaults(func=cmd_rgroup, default_order=8)

    p = sub.add_parser("verify", parents=[common], help="run a named verification suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_verify, default_order=None)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.order is None and args.command != "verify":
        args.order = args.default_order
    try:
        status, text = args.func(args)
    except (UsageError, ZeroPascalError, ValueError, ZeroDivisionError) as exc:
        print(f"zeropascal: error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
