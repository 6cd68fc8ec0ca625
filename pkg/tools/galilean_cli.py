#!/usr/bin/env python3
"""
Galilean CLI: compose motions, move points, convert between the six
representations, run the property suites and emit projection figure data.

stdout carries only data (JSON lines, or CSV for `project`); logs go to
stderr. Exit codes: 0 success, 1 verification failure, 2 usage/parse error.

Usage:
    python tools/galilean_cli.py compose --motion 1,2,3 --motion 4,5,6
    python tools/galilean_cli.py act --motion 1,1,1 --point 2,3 --all
    python tools/galilean_cli.py convert --motion 5,7,2 --from Std3x3 --rep ConvenientDual
    python tools/galilean_cli.py verify --seed 42 --trials 1000
    python tools/galilean_cli.py project --grid=-1:1:3,-1:1:3 --motion 1,1,1 --save
    ./galilean.sh compose --scalar rational --motion 1,2,3 --motion 4,5,6
"""
import argparse
import logging
import sys
from typing import Iterable, List, Optional

from config import (
    DEFAULT_SCALAR,
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    FIGURE_COLUMNS,
    LOG_LEVEL,
    REPRESENTATIONS,
    ensure_outputs_dir,
)
from codec import (
    dumps,
    loads,
    motion_from_json,
    motion_to_json,
    parse_grid,
    parse_motion_arg,
    parse_point_arg,
    point_to_json,
    read_json_lines,
    rep_element_from_json,
    rep_element_to_json,
    scalar_to_json,
)
from errors import EmptyInput, GalileanError, MalformedRepElement, ParseError, Unsupported
from galilean_group import GalileanMotion, RepElement, RepId, compose_all, from_rep, to_rep, validate_rep
from pimenov_core import ScalarMode
from plane_actions import GalileanPoint, act_via_rep, emit_projection_figure, write_figure_csv
from verify_properties import FAULTABLE, SUITES, run_suites

logger = logging.getLogger(__name__)

FIGURE_FILENAME = "projection.csv"


# ──────────────────────────────────────────────
# Commands
# ──────────────────────────────────────────────

def cmd_compose(motions: Iterable[GalileanMotion]) -> GalileanMotion:
    """Left-to-right product of the given motions."""
    return compose_all(motions)


def cmd_act(m: GalileanMotion, p: GalileanPoint, reps: List[RepId]) -> List[dict]:
    """Image of p under m, once per requested representation."""
    return [{"point": point_to_json(act_via_rep(m, p, rep)), "rep": rep.value} for rep in reps]


def cmd_convert(e: RepElement, target: RepId) -> RepElement:
    if not validate_rep(e):
        raise MalformedRepElement(f"payload is not a valid {e.rep.value} element")
    return to_rep(from_rep(e), target)


def cmd_verify(seed: int, trials: int, mode: ScalarMode, only=None, inject_fault=None) -> dict:
    return run_suites(seed, trials, mode, only, inject_fault)


def cmd_project(grid_spec: str, m: GalileanMotion, mode: Optional[ScalarMode] = None) -> List[dict]:
    return emit_projection_figure(parse_grid(grid_spec, mode), m)


# ──────────────────────────────────────────────
# Input helpers
# ──────────────────────────────────────────────

def _json_inputs(args) -> List:
    """JSON values from --input FILE, or stdin when no other input was given."""
    if args.input:
        try:
            with open(args.input, encoding="utf-8") as f:
                return list(read_json_lines(f))
        except OSError as e:
            raise ParseError(f"cannot read {args.input}: {e}")
    return list(read_json_lines(sys.stdin))


def _motions(args, mode: ScalarMode) -> List[GalileanMotion]:
    if args.motion:
        return [parse_motion_arg(text, mode) for text in args.motion]
    return [motion_from_json(value, mode) for value in _json_inputs(args)]


def _single_motion(args, mode: ScalarMode) -> GalileanMotion:
    motions = _motions(args, mode)
    if not motions:
        raise EmptyInput("expected one motion, got none")
    if len(motions) > 1:
        raise ParseError(f"expected exactly one motion, got {len(motions)}")
    return motions[0]


def _elements(args, mode: ScalarMode) -> List[RepElement]:
    if args.element:
        return [rep_element_from_json(loads(args.element), mode)]
    if args.motion:
        source = RepId.parse(args.source)
        return [to_rep(parse_motion_arg(text, mode), source) for text in args.motion]
    return [rep_element_from_json(value, mode) for value in _json_inputs(args)]


def _emit_rows(rows: List[dict], output: str) -> None:
    if output == "csv":
        write_figure_csv(rows, sys.stdout)
        return
    for row in rows:
        print(dumps({key: scalar_to_json(row[key]) for key in FIGURE_COLUMNS}))


# ──────────────────────────────────────────────
# Argument parsing
# ──────────────────────────────────────────────

def parse_args(argv=None):
    parser = argparse.ArgumentParser(
        description="Galilean plane motions over the Pimenov algebra",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--scalar", choices=[m.value for m in ScalarMode], default=DEFAULT_SCALAR,
        help=f"Scalar backend (default: {DEFAULT_SCALAR})",
    )
    common.add_argument(
        "--output", choices=["json", "csv"], default=None,
        help="Output format (default: csv for project, json otherwise)",
    )

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compose", parents=[common], help="Compose motions left to right")
    p.add_argument("--motion", action="append", help="Motion as a,b,theta (repeatable; use --motion=-1,2,3 for negatives)")
    p.add_argument("--input", type=str, default=None, help="File of JSON-line motions (default: stdin)")

    p = sub.add_parser("act", parents=[common], help="Move a point by a motion")
    p.add_argument("--motion", action="append", help="Motion as a,b,theta")
    p.add_argument("--point", required=True, help="Point as x,y")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--rep", choices=REPRESENTATIONS, default=None, help="Act through this representation (default: Std3x3)")
    group.add_argument("--all", action="store_true", help="Act through every representation")
    p.add_argument("--input", type=str, default=None, help="File holding one JSON motion")

    p = sub.add_parser("convert", parents=[common], help="Convert elements between representations")
    p.add_argument("--rep", choices=REPRESENTATIONS, required=True, help="Target representation")
    p.add_argument("--from", dest="source", choices=REPRESENTATIONS, default="Std3x3", help="Source representation for --motion (default: Std3x3)")
    p.add_argument("--motion", action="append", help="Build the source element from a,b,theta (repeatable)")
    p.add_argument("--element", type=str, default=None, help="Source element as JSON")
    p.add_argument("--input", type=str, default=None, help="File of JSON-line elements (default: stdin)")

    p = sub.add_parser("verify", parents=[common], help="Run the property suites")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"Random seed (default: {DEFAULT_SEED})")
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS, help=f"Trials per suite (default: {DEFAULT_TRIALS})")
    p.add_argument("--only", action="append", choices=list(SUITES), help="Run only this suite (repeatable)")
    p.add_argument("--inject-fault", choices=list(FAULTABLE), default=None, help="Swap in a wrong composition law for one suite")

    p = sub.add_parser("project", parents=[common], help="Emit stereographic projection figure data")
    p.add_argument("--grid", required=True, help="Sphere grid as y0:y1:n,z0:z1:n")
    p.add_argument("--motion", action="append", help="Motion as a,b,theta")
    p.add_argument("--input", type=str, default=None, help="File holding one JSON motion")
    p.add_argument("--save", action="store_true", help=f"Also write outputs/{FIGURE_FILENAME}")

    args = parser.parse_args(argv)
    if args.output is None:
        args.output = "csv" if args.command == "project" else "json"
    return args


# ──────────────────────────────────────────────
# Main
# ──────────────────────────────────────────────

def run(args) -> int:
    mode = ScalarMode(args.scalar)
    if args.output == "csv" and args.command != "project":
        raise Unsupported(f"csv output is only available for project, not {args.command}")

    if args.command == "compose":
        print(dumps(motion_to_json(cmd_compose(_motions(args, mode)))))
        return 0

    if args.command == "act":
        m = _single_motion(args, mode)
        p = parse_point_arg(args.point, mode)
        reps = list(RepId) if args.all else [RepId.parse(args.rep or RepId.STD_3X3.value)]
        results = cmd_act(m, p, reps)
        if args.all:
            for result in results:
                print(dumps(result))
        else:
            print(dumps(results[0]["point"]))
        return 0

    if args.command == "convert":
        elements = _elements(args, mode)
        if not elements:
            raise EmptyInput("no elements to convert")
        target = RepId.parse(args.rep)
        for e in elements:
            print(dumps(rep_element_to_json(cmd_convert(e, target))))
        return 0

    if args.command == "verify":
        report = cmd_verify(args.seed, args.trials, mode, args.only, args.inject_fault)
        print(dumps(report))
        if not report["ok"]:
            failed = [name for name, p in report["properties"].items() if not p["ok"]]
            logger.warning(f"Verification failed: {', '.join(failed)}")
            return 1
        return 0

    if args.command == "project":
        rows = cmd_project(args.grid, _single_motion(args, mode), mode)
        _emit_rows(rows, args.output)
        if args.save:
            write_figure_csv(rows, ensure_outputs_dir() / FIGURE_FILENAME)
        return 0

    raise GalileanError(f"unknown command: {args.command}")


def main(argv=None) -> int:
    args = parse_args(argv)
    logging.basicConfig(
        level=LOG_LEVEL,
        format="%(asctime)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )
    try:
        return run(args)
    except GalileanError as e:
        print(f"Error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
