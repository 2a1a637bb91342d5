"""Command-line front end.

Subcommands::

    moments    tabulate measure moments as CSV
    carleson   run the criterion battery on a measure file
    transform  apply the averaging transform to a coefficient file
    seminorm   estimate a growth-space seminorm of a coefficient file
    verify     run named scenarios and emit a JSON report

Exit codes: 0 success, 1 scenario failure, 2 usage or validation error,
3 numeric non-convergence (including a battery disagreement).

JSON goes to stdout unless ``--out`` names a file; ``--trace-dir``
additionally writes one ``level,value`` CSV per trace.  All output is
deterministic: repeated runs with the same inputs are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .carleson import DISAGREEMENT, is_s_carleson
from .errors import MeasureValidationError, NumericsError, ParameterError
from .harness import SCENARIOS, ScenarioReport, run_all
from .measure import load_measure, moments
from .series import (
    DEFAULT_ORDER,
    PowerSeries,
    cesaro_mu_s,
    coefficients_text,
    read_coefficients,
)
from .spaces import bloch_seminorm, hinf_norm, lambda_norm, qp_seminorm

__all__ = ["main", "cli_main"]

SCHEMA_VERSION = 1


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _emit_json(payload: dict, out: str | None) -> None:
    _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", out)


def _trace_csv(levels: Sequence[int], values: Sequence[float]) -> str:
    lines = ["level,value"]
    lines.extend(f"{lvl},{val!r}" for lvl, val in zip(levels, values))
    return "\n".join(lines) + "\n"


def _write_traces(trace_dir: str, named: Sequence[tuple[str, Sequence[int], Sequence[float]]]) -> None:
    root = Path(trace_dir)
    root.mkdir(parents=True, exist_ok=True)
    for name, levels, values in named:
        (root / f"{name}.csv").write_text(_trace_csv(levels, values), encoding="utf-8")


def _cmd_moments(args: argparse.Namespace) -> int:
    mu = load_measure(args.measure)
    seq = moments(mu, args.n)
    lines = "".join(f"{n},{seq[n]!r}\n" for n in range(len(seq)))
    _emit(lines, args.out)
    return 0


def _cmd_carleson(args: argparse.Namespace) -> int:
    mu = load_measure(args.measure)
    verdict = is_s_carleson(
        mu,
        args.s,
        depth=args.depth,
        angles=args.angles,
        t=args.t,
        r=args.r,
    )
    payload = verdict.to_dict()
    payload["schema"] = SCHEMA_VERSION
    _emit_json(payload, args.out)
    if args.trace_dir is not None:
        _write_traces(
            args.trace_dir,
            [
                (f"carleson.{crit}", rep.levels, rep.values)
                for crit, rep in verdict.reports.items()
            ],
        )
    return 3 if verdict.consensus == DISAGREEMENT else 0


def _cmd_transform(args: argparse.Namespace) -> int:
    mu = load_measure(args.measure)
    if args.input is not None:
        f = read_coefficients(args.input)
    else:
        f = PowerSeries.constant(args.constant)
    g = cesaro_mu_s(f, mu, args.s, args.order)
    _emit(coefficients_text(g), args.out)
    return 0


def _cmd_seminorm(args: argparse.Namespace) -> int:
    f = read_coefficients(args.input)
    space = args.space
    if space in ("qp", "lambda") and args.p is None:
        raise ParameterError(f"--space {space} requires --p")
    if space in ("bloch", "hinf") and args.p is not None:
        raise ParameterError(f"--space {space} does not take --p")
    if space == "bloch":
        est = bloch_seminorm(f)
    elif space == "qp":
        est = qp_seminorm(f, args.p)
    elif space == "lambda":
        est = lambda_norm(f, args.p)
    else:
        value = hinf_norm(f)
        payload = {
            "schema": SCHEMA_VERSION,
            "space": space,
            "value": value,
            "levels": [0],
            "trace": [value],
            "converged": True,
            "notes": [],
        }
        _emit_json(payload, args.out)
        return 0
    payload = est.to_dict()
    payload["schema"] = SCHEMA_VERSION
    payload["space"] = space
    _emit_json(payload, args.out)
    if args.trace_dir is not None:
        _write_traces(args.trace_dir, [(f"seminorm.{space}", est.levels, est.trace)])
    return 0 if est.converged else 3


def _cmd_verify(args: argparse.Namespace) -> int:
    names = tuple(SCENARIOS) if args.scenario == "all" else (args.scenario,)
    reports = run_all(names, parallel=args.parallel)
    payload = {
        "schema": SCHEMA_VERSION,
        "pass": all(r.passed for r in reports),
        "reports": [r.to_dict() for r in reports],
    }
    _emit_json(payload, args.out)
    if args.trace_dir is not None:
        named = [
            (f"{rep.scenario}.{trace.name}", trace.levels, trace.values)
            for rep in reports
            for trace in rep.traces
        ]
        _write_traces(args.trace_dir, named)
    return 0 if payload["pass"] else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cesaro",
        description="Averaging transforms, tail criteria, and growth-space seminorms.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_mom = sub.add_parser("moments", help="tabulate measure moments as CSV")
    p_mom.add_argument("--measure", required=True, help="measure JSON file")
    p_mom.add_argument("--n", type=int, required=True, help="highest moment index")
    p_mom.add_argument("--out", help="write CSV here instead of stdout")
    p_mom.set_defaults(func=_cmd_moments)

    p_car = sub.add_parser("carleson", help="run the tail-criterion battery")
    p_car.add_argument("--measure", required=True, help="measure JSON file")
    p_car.add_argument("--s", type=float, required=True, help="tail-condition order")
    p_car.add_argument("--t", type=float, default=1.0, help="kernel strengthening exponent")
    p_car.add_argument(
        "--r",
        type=float,
        default=None,
        help="interior singularity exponent for the real kernel (default s/2)",
    )
    p_car.add_argument("--depth", type=int, default=18, help="dyadic probe depth")
    p_car.add_argument("--angles", type=int, default=64, help="angular probes per radius")
    p_car.add_argument("--out", help="write JSON here instead of stdout")
    p_car.add_argument("--trace-dir", help="write per-criterion CSV traces here")
    p_car.set_defaults(func=_cmd_carleson)

    p_tr = sub.add_parser("transform", help="apply the order-s averaging transform")
    p_tr.add_argument("--measure", required=True, help="measure JSON file")
    p_tr.add_argument("--s", type=float, default=1.0, help="transform order")
    p_tr.add_argument("--order", type=int, default=DEFAULT_ORDER, help="truncation order")
    src = p_tr.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="coefficient file, one '<re> <im>' pair per line")
    src.add_argument(
        "--constant", type=float, help="use the constant series with this value"
    )
    p_tr.add_argument("--out", help="write coefficients here instead of stdout")
    p_tr.set_defaults(func=_cmd_transform)

    p_sem = sub.add_parser("seminorm", help="estimate a growth-space seminorm")
    p_sem.add_argument(
        "--space", required=True, choices=("bloch", "qp", "lambda", "hinf")
    )
    p_sem.add_argument("--p", type=float, default=None, help="space exponent")
    p_sem.add_argument("--input", required=True, help="coefficient file")
    p_sem.add_argument("--out", help="write JSON here instead of stdout")
    p_sem.add_argument("--trace-dir", help="write the level trace as CSV here")
    p_sem.set_defaults(func=_cmd_seminorm)

    p_ver = sub.add_parser("verify", help="run scenario checks")
    p_ver.add_argument(
        "--scenario",
        required=True,
        choices=tuple(SCENARIOS) + ("all",),
        help="scenario id, or 'all'",
    )
    p_ver.add_argument("--parallel", action="store_true", help="run scenarios concurrently")
    p_ver.add_argument("--out", help="write JSON here instead of stdout")
    p_ver.add_argument("--trace-dir", help="write scenario traces as CSV here")
    p_ver.set_defaults(func=_cmd_verify)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        return args.func(args)
    except (MeasureValidationError, ParameterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericsError as exc:
        print(f"numerics: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 2


cli_main = main


if __name__ == "__main__":
    sys.exit(main())
