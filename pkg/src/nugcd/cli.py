"""``nugcd`` command line: ``gcd``, ``bench`` and ``euclid-demo``."""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from typing import List, Optional

from .bench import euclid_demo, run_suite
from .driver import GcdConfig, uvgcd, verify_result
from .parse import PolynomialSyntaxError, format_expression, load_polynomial
from .poly import PolynomialPair

EXIT_OK, EXIT_USAGE, EXIT_REGRESSION, EXIT_NUMERIC = 0, 1, 2, 3

# (x + 10)(x^9 + x^8/3 + 1) rounded to ten digits, against its exact factor x + 10
DEMO_P = "x^10 + 10.33333333*x^9 + 3.333333333*x^8 + x + 10."
DEMO_Q = "x + 10"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="nugcd", description="Numerical GCD of univariate polynomials.")
    ap.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)

    g = sub.add_parser("gcd", help="numerical GCD of a polynomial pair")
    g.add_argument("--p", required=True, help="file or expression (coefficients ascend)")
    g.add_argument("--q", required=True, help="file or expression")
    g.add_argument("--eps", type=float, default=1e-10, help="backward-error tolerance")
    g.add_argument("--relative", action="store_true", help="scale eps by ||(p, q)||")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--verify", action="store_true", help="recheck the result from scratch")
    g.add_argument("--json", action="store_true", help="machine-readable output")

    b = sub.add_parser("bench", help="run benchmark families")
    b.add_argument("--suite", default="test1,test2,test3,test5,test6",
                   help='e.g. "test1,test2" or "test1:n=6,10 test6:m=2/1/1/0"')
    b.add_argument("--out", help="CSV report path")
    b.add_argument("--workers", type=int, default=1)
    b.add_argument("--seed", type=int, default=0)

    e = sub.add_parser("euclid-demo", help="floating-point Euclid on a nearly-singular pair")
    e.add_argument("--p", default=DEMO_P)
    e.add_argument("--q", default=DEMO_Q)
    e.add_argument("--tol", type=float, default=1e-12)
    return ap


def _pair(args) -> PolynomialPair:
    try:
        return PolynomialPair(load_polynomial(args.p), load_polynomial(args.q))
    except PolynomialSyntaxError as exc:
        raise UsageError(str(exc)) from None
    except ValueError as exc:
        raise UsageError(f"invalid polynomial: {exc}") from None


def cmd_gcd(args) -> int:
    if not args.eps > 0:
        raise UsageError("--eps must be positive")
    pair = _pair(args)
    res = uvgcd(pair, GcdConfig(epsilon=args.eps, relative=args.relative, rng_seed=args.seed))
    report = verify_result(pair, res) if args.verify else None
    if args.json:
        out = res.to_json()
        if report is not None:
            out["verify"] = {"passed": report.passed, "checks": report.checks,
                             "backward_error": report.backward_error}
        print(json.dumps(out, indent=2))
    else:
        status = "certified" if res.certified else "not certified (trivial GCD)"
        print(f"degree  {res.degree}  [{status}]")
        print(f"rho     {res.rho:.6e}")
        print(f"kappa   {res.kappa:.6e}")
        print(f"u       {format_expression(res.u)}")
        print(f"v       {format_expression(res.v)}")
        print(f"w       {format_expression(res.w)}")
        if report is not None:
            print(report)
    values = [res.rho, *(abs(c) for f in (res.u, res.v, res.w) for c in f.coeffs)]
    if not all(map(math.isfinite, values)) or math.isnan(res.kappa):
        return EXIT_NUMERIC
    if report is not None and not report.passed:
        return EXIT_NUMERIC
    return EXIT_OK


def cmd_bench(args) -> int:
    if args.workers < 1:
        raise UsageError("--workers must be >= 1")
    try:
        report = run_suite(args.suite, GcdConfig(rng_seed=args.seed), out=args.out,
                           workers=args.workers)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print(report.summary())
    return EXIT_OK if report.ok else EXIT_REGRESSION


def cmd_euclid(args) -> int:
    pair = _pair(args)
    if pair.m < pair.n:
        pair = pair.swapped()
    print(euclid_demo(pair, tol=args.tol))
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
        if args.command is None:
            raise UsageError("nugcd: error: choose a command (gcd, bench, euclid-demo)")
        handler = {"gcd": cmd_gcd, "bench": cmd_bench, "euclid-demo": cmd_euclid}[args.command]
        return handler(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except (ArithmeticError, FloatingPointError, OverflowError) as exc:
        print(f"nugcd: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        # unreadable input or unwritable report: an environment problem, not a numeric one
        print(f"nugcd: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
