"""Command line entry point.

    nullcone stratify sl2-forms:2,3 --json out.json
    nullcone candidates examples.json
    nullcone tree g2-adjoint
    nullcone verify adjoint:b2
    nullcone catalog-list

The input argument is a path to a problem JSON file if such a file exists,
otherwise it is parsed as a catalog spec.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .engine import stratify
from .oracle import check_rank2_law, compare_with_naive
from .ratgeom import InputError, ResourceError
from .report import (
    candidates_text,
    fmt_vec,
    to_json_text,
    to_text,
    tree_text,
)
from .rootdata import (
    Problem,
    ValidationError,
    parse_catalog_spec,
    problem_from_json,
    validate,
)
from .svg import render_svg

COMMANDS = ("stratify", "candidates", "tree", "verify", "catalog-list")


class _ArgumentParser(argparse.ArgumentParser):
    # argparse wants to sys.exit(2) on bad usage; route it through the
    # normal input-error path instead so the exit code stays 1
    def error(self, message: str):
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="nullcone",
        description="Stratify the null cone of a rational representation.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("input", nargs="?",
                        help="problem JSON file or catalog spec")
    parser.add_argument("--json", dest="json_path", metavar="PATH",
                        help="write the stratification summary as JSON")
    parser.add_argument("--svg", dest="svg_path", metavar="PATH",
                        help="write a picture (rank <= 2 only)")
    parser.add_argument("--fast", action="store_true",
                        help="prune recursion branches that are provably empty")
    parser.add_argument("--verify", action="store_true",
                        help="cross-check stratify output against the naive oracle")
    parser.add_argument("--no-dedup", action="store_true",
                        help="keep one candidate per vector instead of per Weyl orbit")
    parser.add_argument("--orbit-cap", type=int, metavar="N",
                        help="abort Weyl orbit computations beyond N elements")
    return parser


def _reject_float(token: str):
    raise InputError(f"floating point literal {token!r} not accepted; "
                     "write rationals as \"p/q\" strings")


def load_problem(text: str, orbit_cap: Optional[int] = None) -> Problem:
    path = Path(text)
    if path.exists():
        try:
            data = json.loads(path.read_text(), parse_float=_reject_float)
        except json.JSONDecodeError as exc:
            raise InputError(f"{text}: invalid JSON: {exc}") from exc
        problem = problem_from_json(data)
    else:
        problem = parse_catalog_spec(text)
    if orbit_cap is not None:
        if orbit_cap < 1:
            raise InputError(f"--orbit-cap must be positive, got {orbit_cap}")
        problem = dataclasses.replace(problem, orbit_cap=orbit_cap)
    return problem


_CATALOG_HELP = (
    ("torus", "torus:1,0|0,1|1,1", "torus action with the listed weights"),
    ("sl2-forms", "sl2-forms:2,3,3,4,5", "sum of binary forms of the listed degrees"),
    ("sl3-forms", "sl3-forms:4", "ternary forms of the given degree"),
    ("adjoint", "adjoint:b2", "adjoint representation (a1, a2, b2 or g2)"),
    ("g2-adjoint", "g2-adjoint", "shorthand for adjoint:g2"),
    ("gl2-ex3", "gl2-ex3:2,1", "three-weight rank-2 family with gram [[a,b],[b,a]]"),
    ("direct-sum", "direct-sum:sl2-forms:2+sl2-forms:3",
     "outer direct sum of two specs"),
)


def _catalog_list() -> int:
    width = max(len(example) for _, example, _ in _CATALOG_HELP)
    for name, example, blurb in _CATALOG_HELP:
        print(f"{example.ljust(width)}  {blurb}")
    return 0


def _run_verification(problem: Problem, dedup: bool,
                      fast: bool) -> tuple[list[str], bool]:
    report = compare_with_naive(problem, dedup=dedup)
    lines = []
    ok = report.candidate_set_match
    if ok:
        lines.append("verify: candidate sets agree")
    else:
        for l, side in report.mismatches:
            source = "subset engine" if side == "engine" else "naive scan"
            lines.append(f"verify: l={fmt_vec(l)} found only by the {source}")
    if validate(problem).rank == 2:
        law = check_rank2_law(problem, fast=fast)
        if law:
            lines.extend(f"verify: {line}" for line in law)
            ok = False
        else:
            lines.append("verify: rank-2 law consistent")
    return lines, ok


def _run(args: argparse.Namespace) -> int:
    if args.command == "catalog-list":
        if args.input is not None:
            raise InputError("catalog-list takes no input argument")
        return _catalog_list()
    if args.input is None:
        raise InputError(f"{args.command} requires an input argument")
    if args.command != "stratify":
        for flag, value in (("--json", args.json_path), ("--svg", args.svg_path)):
            if value is not None:
                raise InputError(f"{flag} is only valid with the stratify command")
        if args.verify and args.command != "verify":
            raise InputError("--verify is only valid with the stratify command")

    problem = load_problem(args.input, args.orbit_cap)
    dedup = not args.no_dedup

    if args.command == "verify":
        lines, ok = _run_verification(problem, dedup, args.fast)
        for line in lines:
            print(line)
        return 0 if ok else 3

    summary = stratify(problem, fast=args.fast, dedup=dedup)

    if args.command == "candidates":
        sys.stdout.write(candidates_text(summary))
        return 0
    if args.command == "tree":
        for decision in summary.decisions:
            print(tree_text(decision.tree))
        return 0

    sys.stdout.write(to_text(summary))
    if args.json_path:
        Path(args.json_path).write_text(to_json_text(summary))
    if args.svg_path:
        Path(args.svg_path).write_text(render_svg(summary))
    if args.verify:
        lines, ok = _run_verification(problem, dedup, args.fast)
        for line in lines:
            print(line)
        if not ok:
            return 3
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return _run(args)
    except ValidationError as exc:
        for violation in exc.violations:
            print(f"error: {violation}", file=sys.stderr)
        return 1
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ResourceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
