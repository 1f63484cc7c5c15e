"""Command-line front end.

Subcommands: ``sweep`` (metrics over a phi grid, optional secondary
parameter grid), ``preset`` (bundled figure datasets), ``validate``
(built-in invariant suite), ``choi`` (channel positivity report).

Exit codes: 0 success, 1 validation failure, 2 usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path
from typing import Optional

import numpy as np

from . import selfcheck
from .channel import ChannelMode
from .errors import (
    BadDimensionError,
    InvalidSpecError,
    NonFiniteError,
    OutOfRangeError,
    SpinboostError,
    UnknownPresetError,
)
from .states import BlochState, Explicit, GenericPure, Werner, XState
from .sweep import ParamGrid, PhysicalityReport, SweepSpec, run_choi, run_preset, run_sweep

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2
EXIT_IO = 3

_MODES = ("verbatim", "symmetrized", "unitary")


class _UsageError(Exception):
    pass


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinboost",
        description=(
            "Two-qubit Bloch states under a phi-parameterized boost map: "
            "entanglement/entropy sweeps with physicality diagnostics."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("sweep", help="evaluate metrics over a phi grid")
    sp.add_argument(
        "--family",
        choices=("werner", "xstate", "pure", "explicit"),
        required=True,
        help="input state family",
    )
    sp.add_argument("--x", type=float, help="werner mixing parameter in [-1, 1]")
    sp.add_argument("--cxx", type=float, help="xstate correlation c_xx")
    sp.add_argument("--cyy", type=float, help="xstate correlation c_yy")
    sp.add_argument("--czz", type=float, help="xstate correlation c_zz")
    sp.add_argument("--p", type=float, help="pure-family parameter in [0, 1]")
    sp.add_argument(
        "--bloch",
        help="explicit family: 15 comma-separated values (s1 s2 s3 t1 t2 t3 c11..c33)",
    )
    sp.add_argument("--phi-start", type=float, default=0.0)
    sp.add_argument("--phi-end", type=float, default=2.0 * math.pi)
    sp.add_argument("--steps", type=int, default=361, help="inclusive phi grid size")
    sp.add_argument("--mode", choices=_MODES, default="verbatim")
    sp.add_argument("--out", type=Path, required=True, help="output file path")
    sp.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")
    sp.add_argument("--param", help="secondary grid: sweepable family parameter name")
    sp.add_argument("--param-start", type=float)
    sp.add_argument("--param-end", type=float)
    sp.add_argument("--param-steps", type=int)
    sp.add_argument(
        "--plot", action="store_true", help="render a PNG figure next to the data file"
    )
    sp.set_defaults(func=_cmd_sweep)

    pp = sub.add_parser("preset", help="run a bundled figure preset")
    pp.add_argument("name", help="one of fig1..fig5")
    pp.add_argument("--out-dir", type=Path, default=Path("."))
    pp.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")
    pp.add_argument("--no-plot", action="store_true", help="skip PNG rendering")
    pp.set_defaults(func=_cmd_preset)

    vp = sub.add_parser("validate", help="run the built-in invariant suite")
    vp.add_argument("--seed", type=int, default=selfcheck.DEFAULT_SEED)
    vp.set_defaults(func=_cmd_validate)

    cp = sub.add_parser("choi", help="report the channel's Choi matrix at one angle")
    cp.add_argument("--mode", choices=_MODES, default="verbatim")
    cp.add_argument("--phi", type=float, required=True)
    cp.set_defaults(func=_cmd_choi)
    return parser


def _family_from_args(args):
    if args.family == "werner":
        if args.x is None:
            raise _UsageError("--family werner requires --x")
        return Werner(args.x)
    if args.family == "xstate":
        if None in (args.cxx, args.cyy, args.czz):
            raise _UsageError("--family xstate requires --cxx, --cyy and --czz")
        return XState(args.cxx, args.cyy, args.czz)
    if args.family == "pure":
        if args.p is None:
            raise _UsageError("--family pure requires --p")
        return GenericPure(args.p)
    if args.bloch is None:
        raise _UsageError("--family explicit requires --bloch with 15 values")
    try:
        values = [float(v) for v in args.bloch.split(",")]
    except ValueError as exc:
        raise _UsageError(f"--bloch must be comma-separated numbers: {exc}") from exc
    if len(values) != 15:
        raise _UsageError(f"--bloch needs exactly 15 values, got {len(values)}")
    return Explicit(BlochState.from_vector(values))


def _grid_from_args(args) -> Optional[ParamGrid]:
    fields = (args.param, args.param_start, args.param_end, args.param_steps)
    if all(v is None for v in fields):
        return None
    if any(v is None for v in fields):
        raise _UsageError(
            "a secondary grid needs all of --param, --param-start, --param-end, --param-steps"
        )
    return ParamGrid(args.param, args.param_start, args.param_end, args.param_steps)


def _print_report(report: PhysicalityReport) -> None:
    print(f"points evaluated: {report.total_points}")
    print(f"unphysical points: {report.unphysical_points}")
    where = f"phi={report.worst_phi:.10g}"
    if report.worst_param is not None:
        where = f"param={report.worst_param:.10g}, {where}"
    print(f"worst min eigenvalue: {report.worst_min_eigenvalue:.10g} at {where}")
    print(
        f"choi min eigenvalue at worst phi: {report.choi_min_eigenvalue_at_worst:.10g}"
    )


def _cmd_sweep(args) -> int:
    grid = _grid_from_args(args)
    spec = SweepSpec(
        family=_family_from_args(args),
        phi_start=args.phi_start,
        phi_end=args.phi_end,
        steps=args.steps,
        mode=ChannelMode(args.mode),
        param_grid=grid,
        output_path=args.out,
        fmt=args.fmt,
    )
    records, report = run_sweep(spec)
    print(f"wrote {args.out} ({len(records)} records)")
    if args.plot:
        from . import plotting

        png = Path(args.out).with_suffix(".png")
        phis = np.array([r.phi for r in records[: args.steps]])
        if grid is None:
            series = [
                ("concurrence", [r.concurrence for r in records]),
                ("negativity", [r.negativity for r in records]),
                ("entropy", [r.entropy_global for r in records]),
            ]
            plotting.save_curves(png, phis, series, "value", "Metrics vs phi")
        else:
            values = np.array([r.concurrence for r in records]).reshape(
                grid.steps, args.steps
            )
            plotting.save_surface(
                png,
                phis,
                np.linspace(grid.start, grid.stop, grid.steps),
                values,
                param_label=grid.name,
                value_label="concurrence",
            )
        print(f"wrote {png}")
    _print_report(report)
    return EXIT_OK


def _cmd_preset(args) -> int:
    records, report = run_preset(args.name, args.out_dir, args.fmt, plot=not args.no_plot)
    print(f"preset {args.name}: {len(records)} records written under {args.out_dir}")
    _print_report(report)
    return EXIT_OK


def _cmd_validate(args) -> int:
    results = selfcheck.run_all(args.seed)
    print(selfcheck.format_table(results))
    return EXIT_OK if selfcheck.all_passed(results) else EXIT_VALIDATION


def _cmd_choi(args) -> int:
    report = run_choi(ChannelMode(args.mode), args.phi)
    print(f"mode: {report.mode.value}")
    print(f"phi: {report.phi:.10g}")
    print(f"choi trace: {report.trace:.10g}")
    print(f"choi min eigenvalue: {report.min_eigenvalue:.10g}")
    print(f"choi max eigenvalue: {report.max_eigenvalue:.10g}")
    print(f"trace-preserving residual: {report.trace_preserving_residual:.3e}")
    print(f"completely positive: {'yes' if report.completely_positive else 'no'}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (
        InvalidSpecError,
        UnknownPresetError,
        OutOfRangeError,
        BadDimensionError,
        NonFiniteError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except SpinboostError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
