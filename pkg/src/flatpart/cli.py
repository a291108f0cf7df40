"""
Command line front end.

Exit status: 0 success, 1 identity failure, 2 usage error, 3 n outside the
allowed range, 4 input permutation outside the map's domain.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import verify as verification
from .bijections import MAPS, certify
from .core import DomainError, InvalidPermutation, format_perm, parse_perm
from .enumeration import (
    GuardError, build_table, count_avoiding, enumerate_avoiding,
    first_run_length_table, parse_patterns,
)
from .series import closed_form_count, inv_distribution, runs_distribution

EXIT_IDENTITY, EXIT_USAGE, EXIT_GUARD, EXIT_DOMAIN = 1, 2, 3, 4


def _patterns(text: str):
    try:
        return parse_patterns(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _methods(text: str) -> list[str]:
    methods = [m.strip() for m in text.split(",") if m.strip()]
    bad = [m for m in methods if m not in ("direct", "brute", "closed-form")]
    if bad or not methods:
        raise argparse.ArgumentTypeError(f"unknown method(s): {', '.join(bad) or text!r}")
    return methods


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flatpart",
        description="Enumerate and count pattern-avoiding flattened partitions.",
    )
    sub = parser.add_subparsers(dest="verb", required=True, metavar="COMMAND")

    p = sub.add_parser("enumerate", help="list F(n; patterns) in lexicographic order")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--avoid", type=_patterns, default=(), help="e.g. 213,231")
    p.add_argument("--format", choices=("lines", "json"), default="lines")

    p = sub.add_parser("count", help="print |F(n; patterns)|")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--avoid", type=_patterns, default=())
    p.add_argument("--method", choices=("direct", "enumerate", "brute", "closed-form"),
                   default="direct")

    p = sub.add_parser("table", help="counts for all single patterns and pairs")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--method", type=_methods, default=["direct"],
                   help="comma-joined subset of direct,brute,closed-form")

    p = sub.add_parser("stats", help="statistic distributions")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--stat", choices=("runs", "inv", "first-run"), required=True,
                   help="runs over F(n;213), inversions over F(n;312), "
                        "first-run lengths over F(n;213,231)")

    p = sub.add_parser("bijection", help="apply or certify one of the maps")
    p.add_argument("--name", choices=tuple(MAPS), required=True)
    p.add_argument("--mode", choices=("apply", "certify"), default="apply")
    p.add_argument("--n", type=int, help="size for certify mode")
    p.add_argument("--verify", action="store_true",
                   help="with certify: check bijectivity and preserved statistics")

    p = sub.add_parser("verify", help="check every identity and print a JSON report")
    p.add_argument("--scope", choices=verification.SCOPES, default="all")
    p.add_argument("--n-max", type=int, default=9)
    return parser


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def cmd_enumerate(args) -> int:
    perms = list(enumerate_avoiding(args.n, args.avoid))
    if args.format == "json":
        _emit(json.dumps([format_perm(p) for p in perms]))
    else:
        for p in perms:
            _emit(format_perm(p))
    return 0


def cmd_count(args) -> int:
    if args.method == "closed-form":
        if args.n < 1:
            raise GuardError("n must be positive")
        c = closed_form_count(args.n, args.avoid)
        if c is None:
            sys.stderr.write("no closed form for this pattern set\n")
            return EXIT_USAGE
    else:
        c = count_avoiding(args.n, args.avoid, method=args.method)
    _emit(str(c))
    return 0


def cmd_table(args) -> int:
    table = build_table(args.n_max, args.method)
    _emit(table.to_csv() if args.format == "csv" else table.to_json())
    return 0


def cmd_stats(args) -> int:
    if args.stat == "first-run":
        table = first_run_length_table(args.n)
        _emit("k,count\n" + "".join(f"{k},{c}\n" for k, c in table.items()))
        return 0
    if args.n < 2:
        raise GuardError("statistic distributions need n >= 2")
    poly = runs_distribution(args.n) if args.stat == "runs" else inv_distribution(args.n)
    _emit(str(poly))
    return 0


def cmd_bijection(args) -> int:
    if args.mode == "certify":
        if args.n is None:
            sys.stderr.write("certify mode needs --n\n")
            return EXIT_USAGE
        cert = certify(args.name, args.n)
        _emit(cert.to_json())
        if args.verify:
            problems = cert.problems()
            for msg in problems:
                sys.stderr.write(msg + "\n")
            return EXIT_IDENTITY if problems else 0
        return 0
    text = sys.stdin.read().strip()
    if text and "," not in text and len(text) > 1:
        sys.stderr.write("permutations on standard input must be in comma form, e.g. 1,3,2\n")
        return EXIT_USAGE
    p = parse_perm(text)
    _emit(format_perm(MAPS[args.name].func(p), "comma"))
    return 0


def cmd_verify(args) -> int:
    reports = verification.run(args.scope, args.n_max)
    ok = all(r.status == "pass" for r in reports)
    out = {
        "scope": args.scope,
        "n_max": args.n_max,
        "status": "pass" if ok else "fail",
        "reports": [r.to_dict() for r in reports],
    }
    _emit(json.dumps(out, indent=2))
    return 0 if ok else EXIT_IDENTITY


COMMANDS = {
    "enumerate": cmd_enumerate,
    "count": cmd_count,
    "table": cmd_table,
    "stats": cmd_stats,
    "bijection": cmd_bijection,
    "verify": cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.verb](args)
    except GuardError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_GUARD
    except DomainError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_DOMAIN
    except InvalidPermutation as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
