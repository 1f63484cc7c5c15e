"""Acceptance gate: eleven numbered checks, one test each, pinned tolerances.

Each test is self-contained and exercises the public API end to end;
numpy.linalg appears only as an independent oracle.  Computed-vs-reference
figure values in check 9 are logged, not asserted, because the component map
leaves the state space at intermediate angles (check 7 quantifies that).
"""

import numpy as np
import pytest

from spinboost import cli
from spinboost.channel import (
    ChannelMode,
    boost_unitary,
    choi_matrix,
    diagnose,
    transform_bloch,
    transform_bloch_batch,
    transform_xstate_closed,
)
from spinboost.metrics import (
    batch_records,
    compute_record,
    concurrence,
    marginal_entropies,
    negativity,
    purity,
    von_neumann_entropy,
)
from spinboost.states import (
    BlochState,
    GenericPure,
    Werner,
    XState,
    from_density,
    make_state,
    to_density,
)
from spinboost.sweep import CSV_HEADER, run_preset

from helpers import random_density, random_unitary2


def _random_bloch_vectors(rng, n, scale=0.9):
    s = rng.uniform(-scale, scale, (n, 3))
    t = rng.uniform(-scale, scale, (n, 3))
    c = rng.uniform(-scale, scale, (n, 3, 3))
    return s, t, c


def _assemble_stack(s, t, c):
    """Independent matrix assembly: coefficient layout -> kron-built basis."""
    paulis = [
        np.eye(2, dtype=complex),
        np.array([[0, 1], [1, 0]], dtype=complex),
        np.array([[0, -1j], [1j, 0]], dtype=complex),
        np.array([[1, 0], [0, -1]], dtype=complex),
    ]
    basis = np.array([np.kron(a, b) for a in paulis for b in paulis])
    n = s.shape[0]
    co = np.zeros((n, 4, 4))
    co[:, 0, 0] = 1.0
    co[:, 1:, 0] = s
    co[:, 0, 1:] = t
    co[:, 1:, 1:] = c
    return 0.25 * np.einsum("nk,kij->nij", co.reshape(n, 16), basis)


def test_c01_werner_concurrence_closed_form():
    for x in (-1.0 / 3.0, 0.0, 1.0 / 3.0, 0.4, 0.6, 0.7, 0.9, 1.0):
        got = concurrence(to_density(make_state(Werner(x))))
        want = max(0.0, (3.0 * x - 1.0) / 2.0)
        assert got == pytest.approx(want, abs=1e-9), f"x={x}"


def test_c02_singlet_anchor_metrics():
    d = to_density(make_state(Werner(1.0)))
    assert concurrence(d) == pytest.approx(1.0, abs=1e-9)
    assert negativity(d) == pytest.approx(0.5, abs=1e-9)
    assert von_neumann_entropy(d) == pytest.approx(0.0, abs=1e-9)
    ent_a, ent_b = marginal_entropies(d)
    assert ent_a == pytest.approx(1.0, abs=1e-9)
    assert ent_b == pytest.approx(1.0, abs=1e-9)
    assert purity(d) == pytest.approx(1.0, abs=1e-9)


def test_c03_identity_at_zero_angle_all_modes():
    rng = np.random.default_rng(20260815)
    blochs = [
        BlochState(s=s, t=t, c=c)
        for s, t, c in zip(*_random_bloch_vectors(rng, 500))
    ]
    for mode in ChannelMode:
        worst = 0.0
        for b in blochs:
            out = transform_bloch(b, 0.0, mode)
            worst = max(worst, np.abs(out.as_vector() - b.as_vector()).max())
        assert worst < 1e-13, f"mode={mode.value}, worst residual {worst:.3e}"


def test_c04_unitary_mode_conserves_physics():
    rng = np.random.default_rng(20260816)
    phis = np.linspace(0.0, 2.0 * np.pi, 361)
    n_phi = phis.size
    for _ in range(50):
        b = from_density(random_density(rng))
        s = np.tile(b.s, (n_phi, 1))
        t = np.tile(b.t, (n_phi, 1))
        c = np.tile(b.c, (n_phi, 1, 1))
        ns, nt, nc = transform_bloch_batch(s, t, c, phis, ChannelMode.UNITARY_ORACLE)
        rhos = _assemble_stack(ns, nt, nc)
        spectra = np.linalg.eigvalsh(rhos)
        assert np.abs(spectra - spectra[0]).max() < 1e-10
        pur = np.einsum("nij,nij->n", rhos, rhos.conj()).real
        assert np.abs(pur - pur[0]).max() < 1e-10
        safe = np.where(spectra > 1e-12, spectra, 1.0)  # 0 log 0 = 0
        ent = -(safe * np.log2(safe)).sum(axis=1)
        assert np.abs(ent - ent[0]).max() < 1e-10
        assert np.abs(nc[:, 2, 2] - b.c[2, 2]).max() < 1e-10

    # composition law on the generators and through the channel itself
    for _ in range(30):
        a, g = rng.uniform(-4.0, 4.0, 2)
        assert np.abs(boost_unitary(a) @ boost_unitary(g) - boost_unitary(a + g)).max() < 1e-12
        b = from_density(random_density(rng))
        twice = transform_bloch(
            transform_bloch(b, a, ChannelMode.UNITARY_ORACLE), g, ChannelMode.UNITARY_ORACLE
        )
        once = transform_bloch(b, a + g, ChannelMode.UNITARY_ORACLE)
        assert np.abs(twice.as_vector() - once.as_vector()).max() < 1e-12

    for phi in np.linspace(0.0, 2.0 * np.pi, 25):
        w = np.linalg.eigvalsh(choi_matrix(ChannelMode.UNITARY_ORACLE, phi))
        assert w[0] > -1e-10


def test_c05_xstate_closed_form_coherence():
    rng = np.random.default_rng(20260817)
    worst = 0.0
    for _ in range(100):
        cxx, cyy, czz = rng.uniform(-1.0, 1.0, 3)
        for phi in rng.uniform(0.0, 2.0 * np.pi, 20):
            closed = transform_xstate_closed(cxx, cyy, czz, phi).as_vector()
            mapped = transform_bloch(make_state(XState(cxx, cyy, czz)), phi).as_vector()
            worst = max(worst, np.abs(closed - mapped).max())
    assert worst < 1e-13


def test_c06_singlet_concurrence_at_both_endpoints():
    b = make_state(Werner(1.0))
    at_zero = concurrence(to_density(transform_bloch(b, 0.0)))
    quarter = transform_bloch(b, np.pi / 2)
    at_quarter = concurrence(to_density(quarter))
    # record the dip shape without asserting it
    dip = [
        (phi, concurrence(to_density(transform_bloch(b, phi))))
        for phi in np.linspace(0.0, np.pi / 2, 7)
    ]
    print("concurrence along [0, pi/2]:", [(round(p, 4), round(v, 6)) for p, v in dip])
    print(
        "endpoint state c tensor diag:",
        np.diag(quarter.c).round(12).tolist(),
        "| min eigenvalue:",
        round(to_density(quarter).min_eigenvalue, 12),
    )
    assert at_zero == pytest.approx(1.0, abs=1e-9)
    assert at_quarter == pytest.approx(1.0, abs=1e-9), (
        "component map at phi=pi/2 sends the singlet to correlation diag(-1,1,-1), "
        f"whose concurrence evaluates to {at_quarter:.6f}, not 1; "
        "see notes on the unattainable endpoint"
    )


def test_c07_nonpositivity_detected_and_reported():
    b = make_state(Werner(1.0))
    out = to_density(transform_bloch(b, np.pi / 4))
    rec = compute_record(out, phi=np.pi / 4)
    assert -0.26 <= rec.min_eigenvalue <= -0.14
    assert not rec.physical
    # raw eigenvalue must pass through unclipped
    assert rec.min_eigenvalue == pytest.approx(out.min_eigenvalue, abs=0.0)
    assert rec.min_eigenvalue == pytest.approx(
        np.linalg.eigvalsh(out.matrix)[0], abs=1e-12
    )
    diag = diagnose(b, np.pi / 4)
    assert diag.choi_min_eigenvalue < -1e-6
    assert diag.min_output_eigenvalue == pytest.approx(rec.min_eigenvalue, abs=1e-12)


def test_c08_entropy_scale_and_pure_states():
    assert von_neumann_entropy(np.eye(4) / 4.0) == pytest.approx(2.0, abs=1e-12)
    for p in np.linspace(0.0, 1.0, 41):
        d = to_density(make_state(GenericPure(p)))
        assert von_neumann_entropy(d) == pytest.approx(0.0, abs=1e-9), f"p={p}"


def test_c09_presets_complete_with_declared_schema(tmp_path):
    expected = {
        "fig1": {"fig1.csv": 50901},
        "fig2": {
            "fig2_mes.csv": 361,
            "fig2_xstate.csv": 361,
            "fig2_werner_x-0.6.csv": 361,
        },
        "fig3": {"fig3.csv": 50901},
        "fig4": {"fig4_pure_concurrence.csv": 1083, "fig4_werner_entropy.csv": 50901},
        "fig5": {
            "fig5_werner_x1.csv": 361,
            "fig5_werner_x0.7.csv": 361,
            "fig5_werner_x-0.6.csv": 361,
            "fig5_xstate.csv": 361,
        },
    }
    for name, files in expected.items():
        out = tmp_path / name
        records, report = run_preset(name, out_dir=out, plot=False)
        assert report.total_points == sum(files.values())
        produced = sorted(p.name for p in out.iterdir())
        assert produced == sorted(files)
        for fname, rows in files.items():
            path = out / fname
            lines = path.read_text().splitlines()
            assert lines[0] == CSV_HEADER, fname
            assert len(lines) == rows + 1, fname
            has_param = lines[1].split(",")[1] != ""
            usecols = (0, 1, 2, 3, 4, 5, 6, 7, 8) if has_param else (0, 2, 3, 4, 5, 6, 7, 8)
            data = np.loadtxt(path, delimiter=",", skiprows=1, usecols=usecols)
            assert data.shape[0] == rows
            assert np.isfinite(data).all(), f"{fname} contains non-finite cells"
            flags = np.array([ln.rsplit(",", 1)[1] == "true" for ln in lines[1:]])
            min_eig = data[:, -1]
            # every point outside the state space must be flagged, none hidden
            assert np.array_equal(flags, min_eig >= -1e-9), fname

    w6 = np.loadtxt(
        tmp_path / "fig2" / "fig2_werner_x-0.6.csv", delimiter=",", skiprows=1,
        usecols=(0, 2),
    )
    i = int(np.argmax(w6[:, 1]))
    print(
        f"fig2 werner x=-0.6: computed max concurrence {w6[i, 1]:.4f} at "
        f"phi={w6[i, 0]:.4f} (reference curve tops out near 0.44; input is "
        "non-positive, so the reference value is not reproduced)"
    )
    mes = np.loadtxt(
        tmp_path / "fig5" / "fig5_werner_x1.csv", delimiter=",", skiprows=1,
        usecols=(0, 4),
    )
    j = int(np.argmax(mes[:, 1]))
    print(
        f"fig5 mes: computed entropy maximum {mes[j, 1]:.4f} at phi={mes[j, 0]:.4f} "
        "(reference curve places the maximum near phi=1.047)"
    )


def test_c10_metric_cross_validation():
    rng = np.random.default_rng(20260818)
    n = 1000
    rhos = np.array([random_density(rng) for _ in range(n)])
    us = np.array(
        [np.kron(random_unitary2(rng), random_unitary2(rng)) for _ in range(n)]
    )
    rotated = np.einsum("nij,njk,nlk->nil", us, rhos, us.conj())
    base = batch_records(rhos, np.zeros(n))
    spun = batch_records(rotated, np.zeros(n))
    for rec in base:
        assert (rec.concurrence > 1e-8) == (rec.negativity > 1e-8)
    for a, b in zip(base, spun):
        assert a.physical and b.physical
        assert abs(a.concurrence - b.concurrence) < 1e-10
        assert abs(a.negativity - b.negativity) < 1e-10
        assert abs(a.entropy_global - b.entropy_global) < 1e-10
        assert abs(a.entropy_a - b.entropy_a) < 1e-10
        assert abs(a.entropy_b - b.entropy_b) < 1e-10
        assert abs(a.purity - b.purity) < 1e-10
        assert abs(a.min_eigenvalue - b.min_eigenvalue) < 1e-10


def test_c11_determinism_and_validate_mutation(tmp_path, monkeypatch, capsys):
    first = tmp_path / "run1"
    second = tmp_path / "run2"
    run_preset("fig2", out_dir=first, plot=True)
    run_preset("fig2", out_dir=second, plot=True)
    names = sorted(p.name for p in first.iterdir())
    assert names == sorted(p.name for p in second.iterdir())
    assert "fig2.png" in names
    for name in names:
        assert (first / name).read_bytes() == (second / name).read_bytes(), name

    assert cli.main(["validate"]) == 0

    from spinboost import channel

    original = channel.transform_bloch

    def skewed(b, phi, mode=ChannelMode.VERBATIM):
        # flip the sign convention of the second spin component's shear
        if mode is ChannelMode.VERBATIM:
            mode = ChannelMode.SYMMETRIZED_VERBATIM
        return original(b, phi, mode)

    monkeypatch.setattr(channel, "transform_bloch", skewed)
    assert cli.main(["validate"]) == 1
    out = capsys.readouterr().out
    assert "FAIL" in out
