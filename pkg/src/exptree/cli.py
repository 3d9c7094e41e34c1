"""Command-line front end.

The text grammar for external addresses is::

    ADDRESS := INT (SEP INT)* SEP? '(' INT (SEP INT)* ')'
             | '(' INT (SEP INT)* ')'

with SEP a comma or whitespace, e.g. ``0(1)``, ``0 (0 1)``, ``-2,0(1)``.
Itineraries use the same grammar; alternatively a pre-singular itinerary
is a (possibly empty) INT list followed by ``*``, e.g. ``2,*`` or ``*``,
the kneading tail being implied.

Exit codes: 0 success (or ``true``), 1 ``false`` (same-map), 2 usage or
parse error, 3 domain error, 4 realization bound exceeded.
"""

from __future__ import annotations

import argparse
import re
import sys

from . import verify as verify_mod
from .analysis import core_entropy, same_map
from .errors import (
    ExptreeError,
    ParseError,
    RealizationBoundExceededError,
    error_name,
)
from .partition import Itinerary, Plain, PreSingular, itinerary, validate_base
from .realization import addresses_of, separating_addresses
from .sequences import ExtAddress, canonicalize
from .treebuild import build_tree, check_tree_invariants, to_dot, to_json, tree_from_json
from .triods import AddressTriod, Triod, classify, middle_point

__all__ = ["main", "parse_address", "parse_itinerary"]

_TOKEN = re.compile(r"-?\d+|[()*]|[,\s]+")


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        tok = m.group()
        if not tok[0] in ",\t\n\r ":
            tokens.append((tok, pos))
        pos = m.end()
    return tokens


def _parse_int_list(tokens: list[tuple[str, int]], i: int) -> tuple[list[int], int]:
    out = []
    while i < len(tokens) and tokens[i][0] not in "()*":
        out.append(int(tokens[i][0]))
        i += 1
    return out, i


def parse_address(text: str) -> ExtAddress:
    """Parse the ADDRESS grammar; raises :class:`ParseError` with the
    byte offset of the offending token."""
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty address", 0)
    pre, i = _parse_int_list(tokens, 0)
    if i >= len(tokens) or tokens[i][0] != "(":
        offset = tokens[i][1] if i < len(tokens) else len(text)
        raise ParseError("expected '(' starting the period word", offset)
    per, j = _parse_int_list(tokens, i + 1)
    if j >= len(tokens) or tokens[j][0] != ")":
        offset = tokens[j][1] if j < len(tokens) else len(text)
        raise ParseError("expected ')' closing the period word", offset)
    if j + 1 != len(tokens):
        raise ParseError("trailing input after the period word", tokens[j + 1][1])
    if not per:
        raise ParseError("period word must be nonempty", tokens[i][1])
    return canonicalize(pre, per)


def parse_itinerary(text: str) -> Itinerary:
    """Parse an itinerary: an ADDRESS, or an INT list ending in ``*``."""
    tokens = _tokenize(text)
    if any(tok == "*" for tok, _ in tokens):
        prefix, i = _parse_int_list(tokens, 0)
        if i + 1 != len(tokens) or tokens[i][0] != "*":
            raise ParseError("'*' must end a pre-singular itinerary", tokens[i][1])
        return PreSingular(tuple(prefix))
    return Plain(parse_address(text))


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="exptree",
        description="Hubbard-tree combinatorics of post-singularly finite exponential maps",
    )
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("kneading", help="kneading sequence of a base address")
    sp.add_argument("base")

    sp = sub.add_parser("itinerary", help="itinerary of an address w.r.t. a base")
    sp.add_argument("--base", required=True)
    sp.add_argument("address")

    sp = sub.add_parser("tree", help="abstract Hubbard tree of a base address")
    sp.add_argument("base")
    sp.add_argument("--format", choices=("json", "dot"), default="json")
    sp.add_argument("--indent", type=int, default=None)
    sp.add_argument(
        "--check",
        action="store_true",
        help="re-parse the emitted JSON and re-verify all tree invariants",
    )

    sp = sub.add_parser("entropy", help="core entropy of the tree of a base address")
    sp.add_argument("base")
    sp.add_argument("--tol", type=float, default=1e-9)

    sp = sub.add_parser("same-map", help="do two base addresses give the same map?")
    sp.add_argument("first")
    sp.add_argument("second")

    sp = sub.add_parser("addresses-of", help="external addresses realizing an itinerary")
    sp.add_argument("--base", required=True)
    sp.add_argument("itinerary")
    sp.add_argument("--m-max", type=int, default=8)
    sp.add_argument(
        "--m-range",
        nargs=2,
        type=int,
        metavar=("LO", "HI"),
        help="inclusive boundary-sheet range for pre-singular itineraries",
    )
    sp.add_argument(
        "--paranoid",
        action="store_true",
        help="rescan multipliers m+1..2m and require that nothing new appears",
    )

    sp = sub.add_parser("separate", help="separating addresses of an address triod")
    sp.add_argument("--base", required=True)
    sp.add_argument("a1")
    sp.add_argument("a2")
    sp.add_argument("a3")

    sp = sub.add_parser("triod", help="middle point and shape of an itinerary triod")
    sp.add_argument("--base", required=True)
    sp.add_argument("i1")
    sp.add_argument("i2")
    sp.add_argument("i3")

    sp = sub.add_parser("verify", help="run the property suites on a random corpus")
    sp.add_argument("--count", type=int, default=25)
    sp.add_argument("--seed", type=int, default=2024)
    sp.add_argument("--max-preperiod", type=int, default=3)
    sp.add_argument("--max-period", type=int, default=4)
    sp.add_argument("--entry-range", type=int, default=3)
    return p


def _run(args: argparse.Namespace) -> int:
    cmd = args.command
    if cmd == "kneading":
        P = validate_base(parse_address(args.base))
        print(P.kneading)
        return 0
    if cmd == "itinerary":
        P = validate_base(parse_address(args.base))
        print(itinerary(P, parse_address(args.address)))
        return 0
    if cmd == "tree":
        tree = build_tree(validate_base(parse_address(args.base)))
        if args.format == "dot":
            sys.stdout.write(to_dot(tree))
            return 0
        text = to_json(tree, indent=args.indent)
        if args.check:
            check_tree_invariants(tree_from_json(text))
            print("check: ok", file=sys.stderr)
        print(text)
        return 0
    if cmd == "entropy":
        tree = build_tree(validate_base(parse_address(args.base)))
        print(f"{core_entropy(tree, tol=args.tol):.9f}")
        return 0
    if cmd == "same-map":
        result = same_map(parse_address(args.first), parse_address(args.second))
        print("true" if result else "false")
        return 0 if result else 1
    if cmd == "addresses-of":
        P = validate_base(parse_address(args.base))
        m_range = range(args.m_range[0], args.m_range[1] + 1) if args.m_range else None
        found = addresses_of(
            P,
            parse_itinerary(args.itinerary),
            args.m_max,
            m_range,
            paranoid=args.paranoid,
        )
        for a in found:
            print(a)
        return 0
    if cmd == "separate":
        P = validate_base(parse_address(args.base))
        A = AddressTriod(
            (parse_address(args.a1), parse_address(args.a2), parse_address(args.a3)), P
        )
        A.validate()
        shape, assignments = separating_addresses(P, A)
        print(f"shape: {shape}")
        for sa in assignments:
            where = f"gap {sa.gap}" if sa.gap is not None else f"member {sa.member}"
            print(f"{where}: {sa.address}")
        return 0
    if cmd == "triod":
        P = validate_base(parse_address(args.base))
        T = Triod(
            (
                parse_itinerary(args.i1),
                parse_itinerary(args.i2),
                parse_itinerary(args.i3),
            ),
            P,
        )
        T.validate()
        print(f"middle: {middle_point(T)}")
        print(f"shape: {classify(T)}")
        return 0
    if cmd == "verify":
        report = verify_mod.run_all(
            count=args.count,
            seed=args.seed,
            max_preperiod=args.max_preperiod,
            max_period=args.max_period,
            entry_range=args.entry_range,
        )
        ok = True
        for res in report:
            status = "ok" if not res.failures else "FAILED"
            print(f"{res.name}: {status} ({res.cases} checks)")
            for msg in res.failures:
                ok = False
                print(f"  - {msg}", file=sys.stderr)
        return 0 if ok else 1
    raise AssertionError(f"unhandled command {cmd}")


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _run(args)
    except ParseError as exc:
        print(error_name(exc))
        print(exc, file=sys.stderr)
        return 2
    except (RealizationBoundExceededError,) as exc:
        print(error_name(exc))
        print(exc, file=sys.stderr)
        return 4
    except ExptreeError as exc:
        print(error_name(exc))
        print(exc, file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
