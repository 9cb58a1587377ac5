"""Command-line front end.  Every payload is one JSON object on stdout carrying "schema": 1."""
from __future__ import annotations

import argparse
import json
import sys

from . import gallery
from .bounds import Surface, bouquet_bounds, combined_lower_bound, surface_ct_bounds
from .complex import ComplexError, euler_characteristic
from .covers import CoverError, nerve, verify_good_cover
from .homology import betti_numbers, cup_nonzero, cup_product_h1
from .io import complex_from_json, complex_to_json, cover_from_json, cover_to_json, dumps
from .linalg import Field
from .search import SearchConfig, Universe, Verdict, strict_ct_search

EXIT_USAGE = 64
EXIT_DATA = 65


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read_json(path: str):
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        where = "<stdin>" if path == "-" else path
        raise UsageError(f"{where}:{exc.lineno}:{exc.colno}: malformed JSON: {exc.msg}") from None


def _field(text: str) -> Field:
    try:
        return Field.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def cmd_homology(args) -> tuple[int, dict]:
    K = complex_from_json(_read_json(args.input))
    return 0, {"field": str(args.field), "betti": betti_numbers(K, args.field),
               "euler": euler_characteristic(K), "cup_h1_nonzero": cup_nonzero(K, args.field)}


def cmd_cup(args) -> tuple[int, dict]:
    K = complex_from_json(_read_json(args.input))
    cup = cup_product_h1(K, args.field)
    table = [[[str(x) for x in entry] for entry in row] for row in cup.table]
    return 0, {"field": str(args.field), "h1_rank": len(cup.h1.representatives),
               "h2_rank": len(cup.h2.representatives), "nonzero": cup.nonzero, "table": table}


def cmd_bounds(args) -> tuple[int, dict]:
    if args.surface and args.bouquet:
        raise UsageError("give at most one of --surface and --bouquet")
    if args.surface:
        try:
            report = surface_ct_bounds(Surface.parse(args.surface))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        return 0, {"surface": args.surface, **report.as_dict()}
    if args.bouquet:
        key, _, val = args.bouquet.partition("=")
        if key.strip() != "h" or not val.strip().isdigit():
            raise UsageError(f"--bouquet expects h=<int>, got {args.bouquet!r}")
        return 0, {"bouquet": int(val), **bouquet_bounds(int(val)).as_dict()}
    K = complex_from_json(_read_json(args.input))
    return 0, combined_lower_bound(K).as_dict()


def cmd_verify_cover(args) -> tuple[int, dict]:
    cover = cover_from_json(_read_json(args.input))
    report = verify_good_cover(cover, jobs=args.jobs)
    code = {"good": 0, "not-good": 1, "unknown": 2}[report.verdict]
    payload = {"verdict": report.verdict, "size": len(cover)}
    if code:
        payload["witness"] = list(report.witness) if report.witness is not None else None
        payload["witness_names"] = report.witness_names()
        payload["reason"] = report.reason
        print(f"witness {payload['witness']}: {report.reason}", file=sys.stderr)
    return code, payload


def cmd_nerve(args) -> tuple[int, dict]:
    cover = cover_from_json(_read_json(args.input))
    return 0, complex_to_json(nerve(cover))


def cmd_gallery(args) -> tuple[int, dict]:
    if args.list or not args.name:
        return 0, {"names": list(gallery.NAMES)}
    try:
        entry = gallery.build(args.name)
    except (KeyError, ValueError) as exc:
        raise UsageError(str(exc).strip("'\"")) from None
    return 0, {"name": entry.name, "complex": complex_to_json(entry.complex),
               "cover": cover_to_json(entry.cover)}


def cmd_search(args) -> tuple[int, dict]:
    K = complex_from_json(_read_json(args.input))
    universe = None
    if args.universe:
        try:
            universe = Universe.parse(args.universe)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    config = SearchConfig(args.max_size, universe, args.budget_ms)
    outcome = strict_ct_search(K, config)
    payload = outcome.as_dict()
    if outcome.cover is not None:
        payload["cover"] = cover_to_json(outcome.cover)
    code = {Verdict.FOUND_GOOD_COVER: 0, Verdict.NO_GOOD_COVER_UP_TO: 1, Verdict.INCONCLUSIVE: 2}[outcome.verdict]
    return code, payload


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="covertype", description="Covering-type bounds and good-cover verification.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def with_input(sp):
        sp.add_argument("input", nargs="?", default="-", help="JSON file, or - for stdin")
        return sp

    h = with_input(sub.add_parser("homology", help="Betti numbers, Euler characteristic, cup flag"))
    h.add_argument("--field", type=_field, default=Field(0))
    h.set_defaults(func=cmd_homology)

    c = with_input(sub.add_parser("cup", help="cup product table H^1 x H^1 -> H^2"))
    c.add_argument("--field", type=_field, default=Field(0))
    c.set_defaults(func=cmd_cup)

    b = with_input(sub.add_parser("bounds", help="lower/upper bounds on covering type"))
    b.add_argument("--surface", help="g=<genus> or q=<non-orientable genus>")
    b.add_argument("--bouquet", help="h=<number of circles>")
    b.set_defaults(func=cmd_bounds)

    v = with_input(sub.add_parser("verify-cover", help="check that a cover is good (exit 0/1/2)"))
    v.add_argument("--jobs", type=int, default=1)
    v.set_defaults(func=cmd_verify_cover)

    n = with_input(sub.add_parser("nerve", help="nerve of a cover"))
    n.set_defaults(func=cmd_nerve)

    g = sub.add_parser("gallery", help="explicit complexes with good covers")
    g.add_argument("name", nargs="?")
    g.add_argument("--list", action="store_true")
    g.set_defaults(func=cmd_gallery)

    s = with_input(sub.add_parser("search", help="minimal strict good cover search (exit 0 found, 1 none, 2 inconclusive)"))
    s.add_argument("--max-size", type=int, default=3)
    s.add_argument("--universe", help="all | induced | facets")
    s.add_argument("--budget-ms", type=int, default=None)
    s.set_defaults(func=cmd_search)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            raise UsageError("missing subcommand")
        code, payload = args.func(args)
    except UsageError as exc:
        print(f"covertype: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ComplexError, CoverError, ValueError, OSError) as exc:
        print(f"covertype: {exc}", file=sys.stderr)
        return EXIT_DATA
    print(dumps(payload))
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
