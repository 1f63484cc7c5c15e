"""Sweep engine, figure presets, and delimited output.

A sweep evaluates one state family over an inclusive phi grid (optionally
crossed with a secondary family-parameter grid), producing one MetricsRecord
per point in deterministic grid order (parameter-major, then phi) plus a
PhysicalityReport locating the worst positivity violation.

Output files are written atomically (temp file in the target directory, then
rename), in a fixed schema with 17-significant-digit floats, so repeated
runs are byte-identical.  The optional THREADS environment variable caps
worker threads for chunked evaluation; chunk boundaries are fixed, so the
thread count never changes output bytes.
"""

from __future__ import annotations

import contextlib
import dataclasses
import json
import math
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

import numpy as np

from . import channel, linalg, metrics, states
from .channel import ChannelMode
from .errors import InvalidSpecError, UnknownPresetError
from .metrics import MetricsRecord
from .states import (
    POSITIVITY_TOL,
    Explicit,
    GenericPure,
    StateFamily,
    Werner,
    XState,
    make_state,
)

__all__ = [
    "CSV_HEADER",
    "DEFAULT_PHI_STEPS",
    "DEFAULT_PARAM_STEPS",
    "MAX_GRID_POINTS",
    "PRESET_NAMES",
    "ParamGrid",
    "SweepSpec",
    "PhysicalityReport",
    "ChoiReport",
    "run_sweep",
    "run_preset",
    "run_choi",
]

CSV_HEADER = "phi,param,concurrence,negativity,entropy,entropy_a,entropy_b,purity,min_eig,physical"
DEFAULT_PHI_STEPS = 361
DEFAULT_PARAM_STEPS = 141
MAX_GRID_POINTS = 10**6
_CHUNK = 16384

PRESET_NAMES = ("fig1", "fig2", "fig3", "fig4", "fig5")

_SWEEPABLE_FIELDS = {
    Werner: ("x",),
    XState: ("cxx", "cyy", "czz"),
    GenericPure: ("p",),
    Explicit: (),
}


@dataclass(frozen=True)
class ParamGrid:
    """Secondary sweep axis: a named family parameter over an inclusive
    linear grid."""

    name: str
    start: float
    stop: float
    steps: int


@dataclass(frozen=True)
class SweepSpec:
    family: StateFamily
    phi_start: float
    phi_end: float
    steps: int
    mode: ChannelMode = ChannelMode.VERBATIM
    param_grid: Optional[ParamGrid] = None
    output_path: Optional[Union[str, Path]] = None
    fmt: str = "csv"
    positivity_tol: float = POSITIVITY_TOL


@dataclass(frozen=True)
class PhysicalityReport:
    """Where the transformed states left the state space, if anywhere."""

    total_points: int
    unphysical_points: int
    worst_min_eigenvalue: float
    worst_param: Optional[float]
    worst_phi: float
    choi_min_eigenvalue_at_worst: float


@dataclass(frozen=True)
class ChoiReport:
    mode: ChannelMode
    phi: float
    min_eigenvalue: float
    max_eigenvalue: float
    trace: float
    trace_preserving_residual: float
    completely_positive: bool


def _check_spec(spec: SweepSpec) -> None:
    if not isinstance(spec.steps, int) or spec.steps < 2:
        raise InvalidSpecError(f"steps must be an integer >= 2, got {spec.steps!r}")
    if not (math.isfinite(spec.phi_start) and math.isfinite(spec.phi_end)):
        raise InvalidSpecError("phi bounds must be finite")
    if not spec.phi_start < spec.phi_end:
        raise InvalidSpecError(
            f"phi_start must be < phi_end, got [{spec.phi_start}, {spec.phi_end}]"
        )
    if spec.fmt not in ("csv", "json"):
        raise InvalidSpecError(f'format must be "csv" or "json", got {spec.fmt!r}')
    total = spec.steps
    grid = spec.param_grid
    if grid is not None:
        allowed = _SWEEPABLE_FIELDS.get(type(spec.family), ())
        if grid.name not in allowed:
            raise InvalidSpecError(
                f"family {type(spec.family).__name__} has no sweepable parameter "
                f"{grid.name!r} (allowed: {allowed})"
            )
        if not isinstance(grid.steps, int) or grid.steps < 1:
            raise InvalidSpecError(f"param steps must be an integer >= 1, got {grid.steps!r}")
        if not (math.isfinite(grid.start) and math.isfinite(grid.stop)):
            raise InvalidSpecError("param bounds must be finite")
        total *= grid.steps
    if total > MAX_GRID_POINTS:
        raise InvalidSpecError(f"grid has {total} points, cap is {MAX_GRID_POINTS}")


def _thread_count() -> int:
    raw = os.environ.get("THREADS", "").strip()
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _evaluate_arrays(s, t, c, phis, params, mode, positivity_tol):
    ns, nt, nc = channel.transform_bloch_batch(s, t, c, phis, mode)
    rhos = states._assemble_batch(ns, nt, nc)
    return metrics.batch_records(rhos, phis, params, positivity_tol)


def _evaluate_chunked(s, t, c, phis, params, mode, positivity_tol):
    """Evaluate a flat grid in fixed-size chunks, optionally on a thread
    pool (THREADS env var).  Chunk edges are constant, so results and
    output bytes do not depend on the worker count."""
    n = len(phis)
    spans = [(lo, min(lo + _CHUNK, n)) for lo in range(0, n, _CHUNK)]

    def job(span):
        lo, hi = span
        return _evaluate_arrays(
            s[lo:hi],
            t[lo:hi],
            c[lo:hi],
            phis[lo:hi],
            None if params is None else params[lo:hi],
            mode,
            positivity_tol,
        )

    workers = _thread_count()
    if workers > 1 and len(spans) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as pool:
            pieces = list(pool.map(job, spans))
    else:
        pieces = [job(sp) for sp in spans]
    records: list[MetricsRecord] = []
    for piece in pieces:
        records.extend(piece)
    return records


def _grid_arrays(spec: SweepSpec):
    """Flatten the (param x phi) grid into matched 1-D stacks, parameter-major."""
    phis_1d = np.linspace(spec.phi_start, spec.phi_end, spec.steps)
    grid = spec.param_grid
    if grid is None:
        families = [spec.family]
        params = None
        values = None
    else:
        values = np.linspace(grid.start, grid.stop, grid.steps)
        families = [
            dataclasses.replace(spec.family, **{grid.name: float(v)}) for v in values
        ]
        params = np.repeat(values, len(phis_1d))
    vectors = np.stack([make_state(f).as_vector() for f in families])
    big = np.repeat(vectors, len(phis_1d), axis=0)
    phis = np.tile(phis_1d, len(families))
    return big[:, :3], big[:, 3:6], big[:, 6:].reshape(-1, 3, 3), phis, params


def _build_report(records: list[MetricsRecord], mode: ChannelMode) -> PhysicalityReport:
    worst = min(records, key=lambda r: r.min_eigenvalue)
    choi_w = linalg.hermitian_eigen(channel.choi_matrix(mode, worst.phi)).eigenvalues
    return PhysicalityReport(
        total_points=len(records),
        unphysical_points=sum(1 for r in records if not r.physical),
        worst_min_eigenvalue=worst.min_eigenvalue,
        worst_param=worst.param,
        worst_phi=worst.phi,
        choi_min_eigenvalue_at_worst=float(choi_w[0]),
    )


def run_sweep(spec: SweepSpec) -> tuple[list[MetricsRecord], PhysicalityReport]:
    """Evaluate the grid; optionally write the records to spec.output_path."""
    _check_spec(spec)
    mode = ChannelMode(spec.mode)
    s, t, c, phis, params = _grid_arrays(spec)
    records = _evaluate_chunked(s, t, c, phis, params, mode, spec.positivity_tol)
    report = _build_report(records, mode)
    if spec.output_path is not None:
        _write_output(Path(spec.output_path), records, report, spec.fmt)
    return records, report


def _fmt_float(x: float) -> str:
    return format(x, ".17g")


def _records_to_csv(records: list[MetricsRecord]) -> str:
    lines = [CSV_HEADER]
    for r in records:
        lines.append(
            ",".join(
                (
                    _fmt_float(r.phi),
                    "" if r.param is None else _fmt_float(r.param),
                    _fmt_float(r.concurrence),
                    _fmt_float(r.negativity),
                    _fmt_float(r.entropy_global),
                    _fmt_float(r.entropy_a),
                    _fmt_float(r.entropy_b),
                    _fmt_float(r.purity),
                    _fmt_float(r.min_eigenvalue),
                    "true" if r.physical else "false",
                )
            )
        )
    return "\n".join(lines) + "\n"


def _record_obj(r: MetricsRecord) -> dict:
    return {
        "phi": r.phi,
        "param": r.param,
        "concurrence": r.concurrence,
        "negativity": r.negativity,
        "entropy": r.entropy_global,
        "entropy_a": r.entropy_a,
        "entropy_b": r.entropy_b,
        "purity": r.purity,
        "min_eig": r.min_eigenvalue,
        "physical": r.physical,
    }


def _report_obj(rep: PhysicalityReport) -> dict:
    return {
        "total_points": rep.total_points,
        "unphysical_points": rep.unphysical_points,
        "worst_min_eigenvalue": rep.worst_min_eigenvalue,
        "worst_param": rep.worst_param,
        "worst_phi": rep.worst_phi,
        "choi_min_eigenvalue_at_worst": rep.choi_min_eigenvalue_at_worst,
    }


def _records_to_json(records: list[MetricsRecord], report: PhysicalityReport) -> str:
    payload = {
        "records": [_record_obj(r) for r in records],
        "report": _report_obj(report),
    }
    return json.dumps(payload, indent=1) + "\n"


def _write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=str(path.parent), prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        with contextlib.suppress(OSError):
            os.unlink(tmp)
        raise


def _write_output(
    path: Path, records: list[MetricsRecord], report: PhysicalityReport, fmt: str
) -> None:
    if fmt == "csv":
        _write_atomic(path, _records_to_csv(records))
    elif fmt == "json":
        _write_atomic(path, _records_to_json(records, report))
    else:
        raise InvalidSpecError(f'format must be "csv" or "json", got {fmt!r}')


_XSTATE_DEMO = XState(-0.9, -0.8, -0.7)

# (label, family) curve sets for the 1-D presets
_FIG2_CURVES = (
    ("mes", Werner(1.0)),
    ("xstate", _XSTATE_DEMO),
    ("werner_x-0.6", Werner(-0.6)),
)
_FIG5_CURVES = (
    ("werner_x1", Werner(1.0)),
    ("werner_x0.7", Werner(0.7)),
    ("werner_x-0.6", Werner(-0.6)),
    ("xstate", _XSTATE_DEMO),
)
_FIG4_PURE_P = (0.0, 0.6, 1.0)


def _phi_grid() -> np.ndarray:
    return np.linspace(0.0, 2.0 * math.pi, DEFAULT_PHI_STEPS)


def _run_curve(family: StateFamily, out_path: Path, fmt: str):
    spec = SweepSpec(
        family=family,
        phi_start=0.0,
        phi_end=2.0 * math.pi,
        steps=DEFAULT_PHI_STEPS,
        mode=ChannelMode.VERBATIM,
        output_path=out_path,
        fmt=fmt,
    )
    return run_sweep(spec)


def _run_surface(family: StateFamily, grid: ParamGrid, out_path: Path, fmt: str):
    spec = SweepSpec(
        family=family,
        phi_start=0.0,
        phi_end=2.0 * math.pi,
        steps=DEFAULT_PHI_STEPS,
        mode=ChannelMode.VERBATIM,
        param_grid=grid,
        output_path=out_path,
        fmt=fmt,
    )
    return run_sweep(spec)


def _surface_values(records: list[MetricsRecord], field: str, grid_steps: int):
    vals = np.array([getattr(r, field) for r in records])
    return vals.reshape(grid_steps, DEFAULT_PHI_STEPS)


def run_preset(
    name: str,
    out_dir: Union[str, Path] = ".",
    fmt: str = "csv",
    plot: bool = True,
) -> tuple[list[MetricsRecord], PhysicalityReport]:
    """Run one of the bundled figure presets (all VERBATIM mode).

    fig1: Werner concurrence surface, x in [-1, 1] x phi in [0, 2pi].
    fig2: concurrence curves - maximally entangled (Werner x=1), the
          X-state (-0.9, -0.8, -0.7), and Werner x=-0.6.
    fig3: pure-family concurrence surface, p in [0, 1] x phi.
    fig4: pure-family concurrence curves p in {0, 0.6, 1} plus the Werner
          entropy surface, emitted as two datasets.
    fig5: entropy curves for Werner x=1, x=0.7, x=-0.6 and the X-state.

    Data files land in out_dir (one per curve/surface); with plot=True a
    PNG figure is rendered next to each dataset.  Returns the concatenated
    records and an aggregate physicality report.
    """
    if name not in PRESET_NAMES:
        raise UnknownPresetError(
            f"unknown preset {name!r}; available: {', '.join(PRESET_NAMES)}"
        )
    if fmt not in ("csv", "json"):
        raise InvalidSpecError(f'format must be "csv" or "json", got {fmt!r}')
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    phis = _phi_grid()
    all_records: list[MetricsRecord] = []

    if name == "fig1":
        grid = ParamGrid("x", -1.0, 1.0, DEFAULT_PARAM_STEPS)
        records, _ = _run_surface(Werner(0.0), grid, out / f"fig1.{fmt}", fmt)
        all_records += records
        if plot:
            from . import plotting

            plotting.save_surface(
                out / "fig1.png",
                phis,
                np.linspace(-1.0, 1.0, DEFAULT_PARAM_STEPS),
                _surface_values(records, "concurrence", DEFAULT_PARAM_STEPS),
                param_label="x",
                value_label="concurrence",
                title="Werner family concurrence",
            )
    elif name == "fig2":
        series = []
        for label, family in _FIG2_CURVES:
            records, _ = _run_curve(family, out / f"fig2_{label}.{fmt}", fmt)
            all_records += records
            series.append((label, [r.concurrence for r in records]))
        if plot:
            from . import plotting

            plotting.save_curves(
                out / "fig2.png", phis, series, "concurrence", "Concurrence vs phi"
            )
    elif name == "fig3":
        grid = ParamGrid("p", 0.0, 1.0, DEFAULT_PARAM_STEPS)
        records, _ = _run_surface(GenericPure(0.0), grid, out / f"fig3.{fmt}", fmt)
        all_records += records
        if plot:
            from . import plotting

            plotting.save_surface(
                out / "fig3.png",
                phis,
                np.linspace(0.0, 1.0, DEFAULT_PARAM_STEPS),
                _surface_values(records, "concurrence", DEFAULT_PARAM_STEPS),
                param_label="p",
                value_label="concurrence",
                title="Pure family concurrence",
            )
    elif name == "fig4":
        pure_records: list[MetricsRecord] = []
        series = []
        for p in _FIG4_PURE_P:
            vec = make_state(GenericPure(p)).as_vector()
            big = np.broadcast_to(vec, (len(phis), 15))
            recs = _evaluate_chunked(
                big[:, :3],
                big[:, 3:6],
                big[:, 6:].reshape(-1, 3, 3),
                phis,
                np.full(len(phis), p),
                ChannelMode.VERBATIM,
                POSITIVITY_TOL,
            )
            pure_records += recs
            series.append((f"p={p:g}", [r.concurrence for r in recs]))
        pure_report = _build_report(pure_records, ChannelMode.VERBATIM)
        _write_output(
            out / f"fig4_pure_concurrence.{fmt}", pure_records, pure_report, fmt
        )
        all_records += pure_records
        grid = ParamGrid("x", -1.0, 1.0, DEFAULT_PARAM_STEPS)
        wrecords, _ = _run_surface(
            Werner(0.0), grid, out / f"fig4_werner_entropy.{fmt}", fmt
        )
        all_records += wrecords
        if plot:
            from . import plotting

            plotting.save_curves(
                out / "fig4_pure_concurrence.png",
                phis,
                series,
                "concurrence",
                "Pure family concurrence",
            )
            plotting.save_surface(
                out / "fig4_werner_entropy.png",
                phis,
                np.linspace(-1.0, 1.0, DEFAULT_PARAM_STEPS),
                _surface_values(wrecords, "entropy_global", DEFAULT_PARAM_STEPS),
                param_label="x",
                value_label="entropy (bits)",
                title="Werner family entropy",
            )
    else:  # fig5
        series = []
        for label, family in _FIG5_CURVES:
            records, _ = _run_curve(family, out / f"fig5_{label}.{fmt}", fmt)
            all_records += records
            series.append((label, [r.entropy_global for r in records]))
        if plot:
            from . import plotting

            plotting.save_curves(
                out / "fig5.png", phis, series, "entropy (bits)", "Entropy vs phi"
            )

    return all_records, _build_report(all_records, ChannelMode.VERBATIM)


def run_choi(mode: ChannelMode, phi: float) -> ChoiReport:
    """Summarize the channel's Choi matrix at one angle."""
    mode = ChannelMode(mode)
    ch = channel.choi_matrix(mode, float(phi))
    w = linalg.hermitian_eigen(ch).eigenvalues
    tp = 0.0
    for i in range(4):
        for j in range(4):
            block_trace = ch[4 * i : 4 * i + 4, 4 * j : 4 * j + 4].trace()
            target = 1.0 if i == j else 0.0
            tp = max(tp, abs(block_trace - target))
    return ChoiReport(
        mode=mode,
        phi=float(phi),
        min_eigenvalue=float(w[0]),
        max_eigenvalue=float(w[-1]),
        trace=float(ch.trace().real),
        trace_preserving_residual=float(tp),
        completely_positive=bool(w[0] >= -channel.CP_TOL),
    )
