"""Sweep engine: grids, serialization, atomic writes, presets, determinism."""

import json
import os
from pathlib import Path

import numpy as np
import pytest

from spinboost import sweep
from spinboost.channel import ChannelMode
from spinboost.errors import InvalidSpecError, UnknownPresetError
from spinboost.metrics import compute_record
from spinboost.states import GenericPure, Werner, XState, make_state, to_density
from spinboost.sweep import (
    CSV_HEADER,
    ParamGrid,
    SweepSpec,
    run_choi,
    run_preset,
    run_sweep,
)


def _spec(**kw):
    base = dict(family=Werner(1.0), phi_start=0.0, phi_end=np.pi, steps=9)
    base.update(kw)
    return SweepSpec(**base)


# ------------------------------------------------------------------ validation


def test_spec_validation_errors():
    with pytest.raises(InvalidSpecError):
        run_sweep(_spec(steps=1))
    with pytest.raises(InvalidSpecError):
        run_sweep(_spec(steps=2.0))  # type: ignore[arg-type]
    with pytest.raises(InvalidSpecError):
        run_sweep(_spec(phi_start=2.0, phi_end=1.0))
    with pytest.raises(InvalidSpecError):
        run_sweep(_spec(phi_end=np.inf))
    with pytest.raises(InvalidSpecError):
        run_sweep(_spec(fmt="xml"))
    with pytest.raises(InvalidSpecError):
        run_sweep(_spec(param_grid=ParamGrid("p", 0.0, 1.0, 5)))  # not a Werner field
    with pytest.raises(InvalidSpecError):
        run_sweep(_spec(param_grid=ParamGrid("x", 0.0, 1.0, 0)))
    with pytest.raises(InvalidSpecError):
        run_sweep(_spec(steps=2001, param_grid=ParamGrid("x", 0.0, 1.0, 2000)))


# ------------------------------------------------------------------ evaluation


def test_phi_only_sweep_shape_and_first_point():
    records, report = run_sweep(_spec(steps=13))
    assert len(records) == 13
    assert report.total_points == 13
    assert records[0].phi == 0.0
    assert records[-1].phi == pytest.approx(np.pi)
    # phi = 0 row must equal the untransformed state's metrics
    anchor = compute_record(to_density(make_state(Werner(1.0))))
    assert records[0].concurrence == pytest.approx(anchor.concurrence, abs=1e-12)
    assert records[0].entropy_global == pytest.approx(anchor.entropy_global, abs=1e-12)
    assert records[0].purity == pytest.approx(anchor.purity, abs=1e-12)
    assert records[0].param is None


def test_param_grid_is_parameter_major():
    grid = ParamGrid("x", -1.0, 1.0, 3)
    records, report = run_sweep(_spec(steps=4, param_grid=grid))
    assert len(records) == 12
    params = [r.param for r in records]
    assert params == [-1.0] * 4 + [0.0] * 4 + [1.0] * 4
    phis = [r.phi for r in records]
    assert phis[:4] == pytest.approx(list(np.linspace(0, np.pi, 4)))
    assert phis[4:8] == phis[:4]


def test_grid_rows_match_scalar_transform():
    from spinboost.channel import transform_bloch

    grid = ParamGrid("p", 0.0, 1.0, 3)
    records, _ = run_sweep(
        _spec(family=GenericPure(0.0), steps=5, param_grid=grid, mode=ChannelMode.VERBATIM)
    )
    for rec in records:
        b = transform_bloch(make_state(GenericPure(rec.param)), rec.phi)
        one = compute_record(to_density(b), rec.phi, rec.param)
        # rank-deficient images: sqrt of near-zero eigenvalues amplifies
        # solver noise to ~1e-8, so concurrence gets a looser band
        assert rec.concurrence == pytest.approx(one.concurrence, abs=5e-8)
        assert rec.min_eigenvalue == pytest.approx(one.min_eigenvalue, abs=1e-12)
        assert rec.physical == one.physical


def test_modes_produce_different_sweeps():
    verb, _ = run_sweep(_spec(steps=7, mode=ChannelMode.VERBATIM))
    unit, _ = run_sweep(_spec(steps=7, mode=ChannelMode.UNITARY_ORACLE))
    assert any(not r.physical for r in verb)
    assert all(r.physical for r in unit)


def test_report_identifies_worst_point():
    records, report = run_sweep(_spec(steps=9, phi_end=2 * np.pi))
    worst = min(records, key=lambda r: r.min_eigenvalue)
    assert report.worst_min_eigenvalue == worst.min_eigenvalue
    assert report.worst_phi == worst.phi
    assert report.unphysical_points == sum(1 for r in records if not r.physical)
    # singlet at pi/2: eigenvalue -1/2 is the floor for this sweep
    assert report.worst_min_eigenvalue == pytest.approx(-0.5, abs=1e-12)
    assert report.choi_min_eigenvalue_at_worst < -1e-6


# ------------------------------------------------------------------ output files


def test_csv_output_round_trips_exactly(tmp_path):
    out = tmp_path / "sweep.csv"
    records, _ = run_sweep(_spec(steps=11, output_path=out))
    text = out.read_text()
    lines = text.splitlines()
    assert lines[0] == CSV_HEADER
    assert len(lines) == 12
    assert text.endswith("\n")
    for line, rec in zip(lines[1:], records):
        cells = line.split(",")
        assert len(cells) == 10
        assert float(cells[0]) == rec.phi  # .17g survives the round trip bit-exactly
        assert cells[1] == ""
        assert float(cells[2]) == rec.concurrence
        assert float(cells[8]) == rec.min_eigenvalue
        assert cells[9] == ("true" if rec.physical else "false")


def test_csv_param_column(tmp_path):
    out = tmp_path / "grid.csv"
    run_sweep(_spec(steps=3, param_grid=ParamGrid("x", 0.0, 1.0, 2), output_path=out))
    rows = out.read_text().splitlines()[1:]
    assert [float(r.split(",")[1]) for r in rows] == [0.0, 0.0, 0.0, 1.0, 1.0, 1.0]


def test_json_output_structure(tmp_path):
    out = tmp_path / "sweep.json"
    records, report = run_sweep(_spec(steps=5, output_path=out, fmt="json"))
    payload = json.loads(out.read_text())
    assert set(payload) == {"records", "report"}
    assert len(payload["records"]) == 5
    first = payload["records"][0]
    assert set(first) == {
        "phi",
        "param",
        "concurrence",
        "negativity",
        "entropy",
        "entropy_a",
        "entropy_b",
        "purity",
        "min_eig",
        "physical",
    }
    assert first["param"] is None
    assert isinstance(first["physical"], bool)
    rep = payload["report"]
    assert rep["total_points"] == 5
    assert rep["unphysical_points"] == report.unphysical_points
    assert rep["worst_min_eigenvalue"] == report.worst_min_eigenvalue


def test_write_is_atomic_on_failure(tmp_path, monkeypatch):
    out = tmp_path / "data.csv"
    out.write_text("untouched\n")

    def boom(src, dst):
        raise OSError("disk full")

    monkeypatch.setattr(os, "replace", boom)
    with pytest.raises(OSError):
        run_sweep(_spec(steps=4, output_path=out))
    monkeypatch.undo()
    assert out.read_text() == "untouched\n"  # old content intact
    assert list(tmp_path.iterdir()) == [out]  # no temp debris left behind


def test_output_lands_in_new_directory(tmp_path):
    out = tmp_path / "a" / "b" / "sweep.csv"
    run_sweep(_spec(steps=3, output_path=out))
    assert out.exists()


# ------------------------------------------------------------------ determinism


def test_repeat_runs_are_byte_identical(tmp_path):
    spec1 = _spec(steps=40, output_path=tmp_path / "one.csv")
    spec2 = _spec(steps=40, output_path=tmp_path / "two.csv")
    run_sweep(spec1)
    run_sweep(spec2)
    assert (tmp_path / "one.csv").read_bytes() == (tmp_path / "two.csv").read_bytes()


def test_threading_does_not_change_output(tmp_path, monkeypatch):
    grid = ParamGrid("x", -1.0, 1.0, 5)
    monkeypatch.delenv("THREADS", raising=False)
    run_sweep(_spec(steps=8, param_grid=grid, output_path=tmp_path / "serial.csv"))
    monkeypatch.setenv("THREADS", "3")
    monkeypatch.setattr(sweep, "_CHUNK", 7)  # force many small chunks
    run_sweep(_spec(steps=8, param_grid=grid, output_path=tmp_path / "threaded.csv"))
    assert (
        (tmp_path / "serial.csv").read_bytes() == (tmp_path / "threaded.csv").read_bytes()
    )


# ------------------------------------------------------------------ choi summary


def test_run_choi_values():
    rep = run_choi(ChannelMode.VERBATIM, 0.0)
    assert rep.completely_positive
    assert rep.trace == pytest.approx(4.0, abs=1e-12)
    assert rep.max_eigenvalue == pytest.approx(4.0, abs=1e-12)
    assert rep.trace_preserving_residual < 1e-12

    rep = run_choi(ChannelMode.VERBATIM, np.pi / 4)
    assert not rep.completely_positive
    assert rep.min_eigenvalue == pytest.approx(-0.998283, abs=1e-5)
    assert rep.trace == pytest.approx(4.0, abs=1e-12)

    rep = run_choi(ChannelMode.UNITARY_ORACLE, np.pi / 4)
    assert rep.completely_positive
    assert rep.trace_preserving_residual < 1e-12


# ------------------------------------------------------------------ presets


def test_unknown_preset_rejected(tmp_path):
    with pytest.raises(UnknownPresetError):
        run_preset("fig9", out_dir=tmp_path)
    with pytest.raises(InvalidSpecError):
        run_preset("fig2", out_dir=tmp_path, fmt="yaml")


def test_preset_fig2_files_and_content(tmp_path):
    records, report = run_preset("fig2", out_dir=tmp_path, plot=False)
    names = sorted(p.name for p in tmp_path.iterdir())
    assert names == ["fig2_mes.csv", "fig2_werner_x-0.6.csv", "fig2_xstate.csv"]
    assert len(records) == 3 * 361
    assert report.total_points == 3 * 361
    mes = (tmp_path / "fig2_mes.csv").read_text().splitlines()
    assert mes[0] == CSV_HEADER
    assert len(mes) == 362
    first = mes[1].split(",")
    assert float(first[0]) == 0.0
    assert float(first[2]) == pytest.approx(1.0, abs=1e-12)  # concurrence at phi = 0


def test_preset_fig2_renders_png(tmp_path):
    run_preset("fig2", out_dir=tmp_path, plot=True)
    png = tmp_path / "fig2.png"
    assert png.exists()
    data = png.read_bytes()
    assert data[:8] == b"\x89PNG\r\n\x1a\n"
    assert len(data) > 1000


def test_preset_fig5_json_format(tmp_path):
    records, _ = run_preset("fig5", out_dir=tmp_path, fmt="json", plot=False)
    names = sorted(p.name for p in tmp_path.iterdir())
    assert names == [
        "fig5_werner_x-0.6.json",
        "fig5_werner_x0.7.json",
        "fig5_werner_x1.json",
        "fig5_xstate.json",
    ]
    assert len(records) == 4 * 361
    payload = json.loads((tmp_path / "fig5_werner_x1.json").read_text())
    assert len(payload["records"]) == 361
    assert payload["report"]["total_points"] == 361


def test_preset_constants():
    assert sweep.DEFAULT_PHI_STEPS == 361
    assert sweep.DEFAULT_PARAM_STEPS == 141
    assert sweep.PRESET_NAMES == ("fig1", "fig2", "fig3", "fig4", "fig5")
