"""
Command-line interface.

    modcon run   (--builtin NAME | --scenario PATH) [--horizon N] [--stride N]
                 [--csv PATH] [--report PATH] [--tolerance R] [--window N]
                 [--tmax N] [--model linear|kuramoto]
    modcon check (--builtin NAME | --scenario PATH) [--tmax N]
    modcon list  [--json]

Exit codes: 0 success, 2 usage or schema error, 3 verdict differs from the
scenario's ``expected`` kind, 4 simulation or validation failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import scenarios
from .dynamics import SimulationError
from .metrics import DEFAULT_TOLERANCE, DEFAULT_WINDOW

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_MISMATCH = 3
EXIT_RUNTIME = 4


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return v


def _add_source(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--builtin", metavar="NAME", help="built-in scenario name")
    src.add_argument("--scenario", metavar="PATH", help="scenario JSON file")
    p.add_argument("--model", choices=("linear", "kuramoto"), default="linear",
                   help="dynamics for builtin scenarios (default: linear)")
    p.add_argument("--tmax", type=_positive_int, default=64, help="largest window length tried")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="modcon", description="Modulus consensus over signed switching networks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="simulate a scenario")
    _add_source(p_run)
    p_run.add_argument("--horizon", type=_positive_int)
    p_run.add_argument("--stride", type=_positive_int, default=1)
    p_run.add_argument("--csv", metavar="PATH", help="write the trajectory CSV here")
    p_run.add_argument("--report", metavar="PATH", help="write the JSON report here (default: stdout)")
    p_run.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE)
    p_run.add_argument("--window", type=_positive_int, default=DEFAULT_WINDOW)

    p_check = sub.add_parser("check", help="print the joint-connectivity report")
    _add_source(p_check)

    p_list = sub.add_parser("list", help="list built-in scenarios")
    p_list.add_argument("--json", action="store_true", help="print a JSON array")
    return parser


def _load(args) -> scenarios.Scenario:
    if args.builtin is not None:
        try:
            return scenarios.builtin(args.builtin, model=args.model)
        except KeyError as exc:
            raise scenarios.ScenarioError(exc.args[0]) from None
    if args.model != "linear":
        raise scenarios.ScenarioError("--model applies to builtin scenarios only")
    try:
        return scenarios.load(args.scenario)
    except OSError as exc:
        raise scenarios.ScenarioError(f"cannot read {args.scenario}: {exc.strerror}") from None


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


def cmd_run(args) -> int:
    sc = _load(args)
    result = scenarios.run(
        sc,
        horizon=args.horizon,
        stride=args.stride,
        tolerance=args.tolerance,
        window=args.window,
        t_max=args.tmax,
    )
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            result.trajectory.write_csv(fh)
    text = _dumps(result.to_dict())
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(text + "\n")
        print(f"{sc.name}: {result.verdict.kind}")
    else:
        print(text)
    if result.expected_match is False:
        print(f"expected {sc.expected}, got {result.verdict.kind}", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_check(args) -> int:
    sc = _load(args)
    from .schedule import classify

    print(_dumps(classify(sc.schedule, t_max=args.tmax).to_dict()))
    return EXIT_OK


def cmd_list(args) -> int:
    if args.json:
        print(json.dumps(list(scenarios.BUILTIN_NAMES)))
    else:
        print("\n".join(scenarios.BUILTIN_NAMES))
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = {"run": cmd_run, "check": cmd_check, "list": cmd_list}[args.command]
    try:
        return handler(args)
    except scenarios.ScenarioError as exc:
        print(f"modcon: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SimulationError as exc:
        print(f"modcon: simulation failed: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except ValueError as exc:
        # e.g. inadmissible Kuramoto parameters detected when the run starts
        print(f"modcon: error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
