"""Command-line interface: ``dehntetra check|scan|dim|orbit|family|bound``.

Exit codes: 0 success, 2 usage error, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction

from .bounds import case5_bound
from .dehn import DEFAULT_FILTER_PRIMES
from .families import (
    h1_instance,
    h1_instances,
    h2_search,
    h3_search,
    new_family_instance,
)
from .padic import valuation_matrix
from .search import (
    ScanConfig,
    VerificationFailure,
    check_tuple,
    format_records,
    from_lex_order,
    scan,
)
from .symmetry import orbit
from .geometry import is_nondegenerate

EXIT_OK, EXIT_USAGE, EXIT_VERIFY = 0, 2, 3


class UsageError(Exception):
    pass


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError(f"edge lengths must be positive: {value}")
    return value


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _primes(text: str) -> tuple:
    if not text.strip():
        return ()
    try:
        return tuple(int(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad prime list: {text!r}") from None


def _add_edges(p: argparse.ArgumentParser) -> None:
    p.add_argument("edges", nargs=6, type=_positive_int, metavar="E",
                   help="edge lengths e12 e34 e13 e24 e14 e23")
    p.add_argument("--order", choices=("paper", "lex"), default="paper",
                   help="'lex' reads the edges as e12 e13 e14 e23 e24 e34")


def _edges(args) -> tuple:
    return from_lex_order(args.edges) if args.order == "lex" else tuple(args.edges)


def _emit(obj) -> None:
    print(json.dumps(obj, separators=(", ", ": ")))


def cmd_check(args) -> int:
    report = check_tuple(_edges(args), args.primes, args.cross_check)
    _emit(report.as_dict())
    return EXIT_OK


def cmd_scan(args) -> int:
    try:
        config = ScanConfig(
            max_edge=args.max_edge,
            filter_primes=args.primes,
            workers=args.workers,
            dedupe=args.dedupe,
            output_format=args.format,
            cross_check=args.cross_check,
            emit_all=args.all,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out = open(args.output, "w") if args.output else sys.stdout
    try:
        out.write(format_records(scan(config), config.output_format))
        out.flush()
    finally:
        if args.output:
            out.close()
    return EXIT_OK


def cmd_dim(args) -> int:
    edges = _edges(args)
    if not is_nondegenerate(edges):
        raise UsageError(f"degenerate or non-realizable edge tuple {edges}")
    vm = valuation_matrix(edges)
    _emit({
        "edges": list(edges),
        "dimension": vm.rank(),
        "rows": [{"p": b.p, "branch": b.base, "valuations": list(v)} for b, v in vm.rows],
    })
    return EXIT_OK


def cmd_orbit(args) -> int:
    members = orbit(_edges(args), args.group, up_to_s4=args.up_to == "s4")
    _emit({"size": len(members), "orbit": [[str(x) if isinstance(x, Fraction) else x for x in t] for t in members]})
    return EXIT_OK


def cmd_family(args) -> int:
    if (args.t is None) == (args.max_denominator is None):
        raise UsageError("give exactly one of --t or --max-denominator")
    name = args.family
    if args.t is not None:
        if name in ("new-t", "new-tp"):
            try:
                inst = new_family_instance(args.t, "T" if name == "new-t" else "TPrime")
            except ValueError as exc:
                raise UsageError(str(exc)) from None
            instances = [inst]
        elif name == "h1":
            inst = h1_instance(args.t)
            instances = [inst] if inst else []
        else:
            raise UsageError(f"{name} is searched with --max-denominator")
    else:
        if args.max_denominator < 1:
            raise UsageError("--max-denominator must be >= 1")
        finders = {"h1": h1_instances, "h2": h2_search, "h3": h3_search}
        if name not in finders:
            raise UsageError(f"{name} takes --t")
        instances = finders[name](args.max_denominator)
    for inst in instances:
        _emit(inst.as_dict())
    return EXIT_OK


def cmd_bound(args) -> int:
    try:
        report = case5_bound(args.precision)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(report.as_dict())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dehntetra", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="full pipeline on one edge tuple")
    _add_edges(p)
    p.add_argument("--primes", type=_primes, default=DEFAULT_FILTER_PRIMES,
                   help="comma-separated mod-p filter primes ('' disables)")
    p.add_argument("--cross-check", action="store_true", help="confirm with the numeric oracle")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("scan", help="enumerate tuples with entries <= --max-edge")
    p.add_argument("--max-edge", type=int, required=True)
    p.add_argument("--dedupe", choices=("none", "s4", "s4+regge"), default="s4")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--primes", type=_primes, default=DEFAULT_FILTER_PRIMES)
    p.add_argument("--cross-check", action="store_true")
    p.add_argument("--all", action="store_true", help="emit every examined tuple, not only Dehn-zero ones")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("dim", help="angle-span dimension and valuation rows")
    _add_edges(p)
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("orbit", help="S4 / Regge orbit of a tuple")
    _add_edges(p)
    p.add_argument("--group", choices=("s4", "regge", "both"), default="both")
    p.add_argument("--up-to", choices=("s4", "none"), default="s4")
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("family", help="members of the known families")
    p.add_argument("family", choices=("h1", "h2", "h3", "new-t", "new-tp"))
    p.add_argument("--t", type=_rational)
    p.add_argument("--max-denominator", type=int)
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("bound", help="explicit edge-length bounds")
    p.add_argument("case", choices=("case5",))
    p.add_argument("--precision", type=int, default=50)
    p.set_defaults(func=cmd_bound)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"dehntetra: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except VerificationFailure as exc:
        print(f"dehntetra: verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
