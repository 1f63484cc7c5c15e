"""The phi-parameterized boost transformation of two-qubit states.

Three selectable semantics:

* ``VERBATIM`` - the component map applied to (s, t, c) exactly as printed
  below.  It fixes c_zz, mixes s3/t3, and rotates the xy correlation block
  asymmetrically; it is trace preserving and Hermiticity preserving but not
  completely positive, so physical inputs can leave the state space.  That
  is a finding to report, not a bug to patch.
* ``SYMMETRIZED_VERBATIM`` - identical except the second component of the
  first Bloch vector rotates with the same orientation as t:
  s2' = s1 sin(phi) + s2 cos(phi) instead of s2 cos(phi) - s1 sin(phi).
* ``UNITARY_ORACLE`` - exact conjugation by the Givens rotation on
  span{|01>, |10>}; completely positive by construction and used as the
  physical cross-check.

Verbatim component map (primed = output)::

    s1' = s1 cos(phi) - s2 sin(phi)
    s2' = s2 cos(phi) - s1 sin(phi)          # the asymmetric line
    s3' = s3 (1+cos 2phi)/2 + t3 (1-cos 2phi)/2
    t1' = t1 cos(phi) - t2 sin(phi)
    t2' = t1 sin(phi) + t2 cos(phi)
    t3' = s3 (1-cos 2phi)/2 + t3 (1+cos 2phi)/2

    cxx' = P cxx + M cyy + (cxy - cyx) sin(2phi)/2
    cxy' = P cxy + M cyx - (cxx + cyy) sin(2phi)/2
    cxz' = cxz cos(phi) - cyz sin(phi)
    cyx' = P cyx + M cxy + (cxx + cyy) sin(2phi)/2
    cyy' = P cyy - M cxx - (cxy + cyx) sin(2phi)/2
    cyz' = cyz cos(phi) + cxz sin(phi)
    czx' = czx cos(phi) + czy sin(phi)
    czy' = czy cos(phi) + czx sin(phi)
    czz' = czz

with P = (1+cos 2phi)/2 and M = (1-cos 2phi)/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Union

import numpy as np

from . import linalg, states
from .errors import NonFiniteError
from .states import BlochState, DensityMatrix, _check_range

__all__ = [
    "CP_TOL",
    "ChannelMode",
    "ChannelDiagnostics",
    "boost_unitary",
    "transform_bloch",
    "transform_bloch_batch",
    "transform_unitary",
    "transform_xstate_closed",
    "transform_pure_closed",
    "transfer_matrix",
    "apply_to_matrix",
    "choi_matrix",
    "diagnose",
]

# A channel is completely positive when its Choi matrix is PSD; this is the
# eigenvalue floor below which we call it non-CP.
CP_TOL = 1e-10


class ChannelMode(Enum):
    VERBATIM = "verbatim"
    SYMMETRIZED_VERBATIM = "symmetrized"
    UNITARY_ORACLE = "unitary"


def _check_phi(phi: float) -> float:
    phi = float(phi)
    if not math.isfinite(phi):
        raise NonFiniteError("phi must be finite")
    return phi


def boost_unitary(phi: float) -> np.ndarray:
    """Givens rotation on span{|01>, |10>}:
    U|01> = cos(phi)|01> + sin(phi)|10>, U|10> = cos(phi)|10> - sin(phi)|01>,
    identity on |00> and |11>."""
    phi = _check_phi(phi)
    c, s = math.cos(phi), math.sin(phi)
    u = np.eye(4, dtype=np.complex128)
    u[1, 1] = c
    u[1, 2] = -s
    u[2, 1] = s
    u[2, 2] = c
    return u


def _unitary_stack(phis: np.ndarray) -> np.ndarray:
    u = np.zeros((len(phis), 4, 4), dtype=np.complex128)
    c, s = np.cos(phis), np.sin(phis)
    u[:, 0, 0] = 1.0
    u[:, 3, 3] = 1.0
    u[:, 1, 1] = c
    u[:, 1, 2] = -s
    u[:, 2, 1] = s
    u[:, 2, 2] = c
    return u


def _map_bloch_arrays(s, t, c, phis, symmetrized: bool):
    """The component map, vectorized over matched leading axes."""
    cos1 = np.cos(phis)
    sin1 = np.sin(phis)
    cos2 = np.cos(2.0 * phis)
    half_sin2 = 0.5 * np.sin(2.0 * phis)
    plus = 0.5 * (1.0 + cos2)
    minus = 0.5 * (1.0 - cos2)

    ns = np.empty(s.shape)
    nt = np.empty(t.shape)
    nc = np.empty(c.shape)

    ns[:, 0] = s[:, 0] * cos1 - s[:, 1] * sin1
    if symmetrized:
        ns[:, 1] = s[:, 0] * sin1 + s[:, 1] * cos1
    else:
        ns[:, 1] = s[:, 1] * cos1 - s[:, 0] * sin1
    ns[:, 2] = s[:, 2] * plus + t[:, 2] * minus

    nt[:, 0] = t[:, 0] * cos1 - t[:, 1] * sin1
    nt[:, 1] = t[:, 0] * sin1 + t[:, 1] * cos1
    nt[:, 2] = s[:, 2] * minus + t[:, 2] * plus

    nc[:, 0, 0] = plus * c[:, 0, 0] + minus * c[:, 1, 1] + half_sin2 * (c[:, 0, 1] - c[:, 1, 0])
    nc[:, 0, 1] = plus * c[:, 0, 1] + minus * c[:, 1, 0] - half_sin2 * (c[:, 0, 0] + c[:, 1, 1])
    nc[:, 0, 2] = cos1 * c[:, 0, 2] - sin1 * c[:, 1, 2]
    nc[:, 1, 0] = plus * c[:, 1, 0] + minus * c[:, 0, 1] + half_sin2 * (c[:, 0, 0] + c[:, 1, 1])
    nc[:, 1, 1] = plus * c[:, 1, 1] - minus * c[:, 0, 0] - half_sin2 * (c[:, 0, 1] + c[:, 1, 0])
    nc[:, 1, 2] = cos1 * c[:, 1, 2] + sin1 * c[:, 0, 2]
    nc[:, 2, 0] = cos1 * c[:, 2, 0] + sin1 * c[:, 2, 1]
    nc[:, 2, 1] = cos1 * c[:, 2, 1] + sin1 * c[:, 2, 0]
    nc[:, 2, 2] = c[:, 2, 2]
    return ns, nt, nc


def transform_bloch_batch(s, t, c, phis, mode: ChannelMode):
    """Vectorized transform over matched stacks: s (N,3), t (N,3), c (N,3,3),
    phis (N,).  Returns transformed (s, t, c) stacks.  Sweep engine fast path."""
    phis = np.asarray(phis, dtype=np.float64)
    if mode is ChannelMode.UNITARY_ORACLE:
        rhos = states._assemble_batch(np.asarray(s), np.asarray(t), np.asarray(c))
        u = _unitary_stack(phis)
        out = u @ rhos @ np.conjugate(np.swapaxes(u, 1, 2))
        return states._extract_batch(out)
    symmetrized = mode is ChannelMode.SYMMETRIZED_VERBATIM
    return _map_bloch_arrays(
        np.asarray(s, dtype=np.float64),
        np.asarray(t, dtype=np.float64),
        np.asarray(c, dtype=np.float64),
        phis,
        symmetrized,
    )


def transform_bloch(
    b: BlochState, phi: float, mode: ChannelMode = ChannelMode.VERBATIM
) -> BlochState:
    """Transform one Bloch state by angle phi under the chosen mode."""
    phi = _check_phi(phi)
    mode = ChannelMode(mode)
    ns, nt, nc = transform_bloch_batch(
        b.s[None], b.t[None], b.c[None], np.array([phi]), mode
    )
    return BlochState(ns[0], nt[0], nc[0])


def transform_unitary(d: Union[DensityMatrix, np.ndarray], phi: float) -> DensityMatrix:
    """Exact conjugation rho -> U(phi) rho U(phi)^dagger.

    Preserves spectrum, purity and entropy; PSD in implies PSD out.
    """
    phi = _check_phi(phi)
    dm = d if isinstance(d, DensityMatrix) else DensityMatrix(np.asarray(d))
    u = boost_unitary(phi)
    return DensityMatrix(u @ dm.matrix @ u.conj().T, dm.positivity_tol)


def transform_xstate_closed(cxx: float, cyy: float, czz: float, phi: float) -> BlochState:
    """Closed-form image of a diagonal-correlation (X-class) state:

        cxx' = {(1+cos 2phi) cxx + (1-cos 2phi) cyy} / 2
        cxy' = -(cxx + cyy) sin(2phi) / 2 = -cyx'
        cyy' = -{(1-cos 2phi) cxx - (1+cos 2phi) cyy} / 2
        czz' = czz

    Must agree with transform_bloch(XState(...), phi, VERBATIM) identically;
    a drift between the two is a defect in one of them.
    """
    cxx = _check_range("cxx", cxx, -1.0, 1.0)
    cyy = _check_range("cyy", cyy, -1.0, 1.0)
    czz = _check_range("czz", czz, -1.0, 1.0)
    phi = _check_phi(phi)
    cos2 = math.cos(2.0 * phi)
    sin2 = math.sin(2.0 * phi)
    c = np.zeros((3, 3))
    c[0, 0] = 0.5 * ((1.0 + cos2) * cxx + (1.0 - cos2) * cyy)
    c[0, 1] = -0.5 * (cxx + cyy) * sin2
    c[1, 0] = 0.5 * (cxx + cyy) * sin2
    c[1, 1] = -0.5 * ((1.0 - cos2) * cxx - (1.0 + cos2) * cyy)
    c[2, 2] = czz
    return BlochState(np.zeros(3), np.zeros(3), c)


def transform_pure_closed(p: float, phi: float) -> BlochState:
    """Closed-form image of the one-parameter pure family, as printed:

        s'  = (p cos(phi), 0, 0),   t' = (-p cos(phi), 0, 0)
        cxx' = -{(1+q) + (1-q) cos 2phi} / 2
        cxy' =  (1+q) sin(2phi) / 2
        cyx' = -(1-q) sin(2phi) / 2
        cyy' =  {(1-q) - (1+q) cos 2phi} / 2
        czz' = -q,   q = sqrt(1 - p^2)

    This printed form and the component map (VERBATIM) agree on every entry
    except s2', t2' and cyx'; the disagreement is reported by tests and
    diagnostics, never reconciled silently.
    """
    p = _check_range("p", p, 0.0, 1.0)
    phi = _check_phi(phi)
    q = math.sqrt(max(0.0, 1.0 - p * p))
    cos1 = math.cos(phi)
    cos2 = math.cos(2.0 * phi)
    sin2 = math.sin(2.0 * phi)
    c = np.zeros((3, 3))
    c[0, 0] = -0.5 * ((1.0 + q) + (1.0 - q) * cos2)
    c[0, 1] = 0.5 * (1.0 + q) * sin2
    c[1, 0] = -0.5 * (1.0 - q) * sin2
    c[1, 1] = 0.5 * ((1.0 - q) - (1.0 + q) * cos2)
    c[2, 2] = -q
    return BlochState(
        np.array([p * cos1, 0.0, 0.0]), np.array([-p * cos1, 0.0, 0.0]), c
    )


def transfer_matrix(phi: float, mode: ChannelMode = ChannelMode.VERBATIM) -> np.ndarray:
    """The 16x16 real matrix T with coeffs(output) = T @ coeffs(input) in the
    Pauli product basis (flat index 4*mu + nu).

    For the Bloch modes T is written down from the component map; for the
    unitary mode it is computed as T_kl = tr(P_k U P_l U+) / 4.  Every mode
    has T[0, :] = e_0 (trace preservation) and T[15, 15] = 1 (czz fixed).
    """
    phi = _check_phi(phi)
    mode = ChannelMode(mode)
    if mode is ChannelMode.UNITARY_ORACLE:
        u = boost_unitary(phi)
        rotated = u @ linalg.PRODUCT_BASIS @ u.conj().T
        return 0.25 * np.real(np.einsum("kij,lji->kl", linalg.PRODUCT_BASIS, rotated))
    cos1, sin1 = math.cos(phi), math.sin(phi)
    cos2 = math.cos(2.0 * phi)
    h = 0.5 * math.sin(2.0 * phi)
    plus, minus = 0.5 * (1.0 + cos2), 0.5 * (1.0 - cos2)
    t = np.zeros((16, 16))
    t[0, 0] = 1.0
    # first-qubit Bloch components live at flat indices 4, 8, 12
    t[4, 4] = cos1
    t[4, 8] = -sin1
    t[8, 8] = cos1
    t[8, 4] = sin1 if mode is ChannelMode.SYMMETRIZED_VERBATIM else -sin1
    t[12, 12] = plus
    t[12, 3] = minus
    # second-qubit Bloch components at flat indices 1, 2, 3
    t[1, 1] = cos1
    t[1, 2] = -sin1
    t[2, 1] = sin1
    t[2, 2] = cos1
    t[3, 3] = plus
    t[3, 12] = minus
    # correlation entries c_ij at flat index 4i + j
    t[5, 5] = plus
    t[5, 10] = minus
    t[5, 6] = h
    t[5, 9] = -h
    t[6, 6] = plus
    t[6, 9] = minus
    t[6, 5] = -h
    t[6, 10] = -h
    t[7, 7] = cos1
    t[7, 11] = -sin1
    t[9, 9] = plus
    t[9, 6] = minus
    t[9, 5] = h
    t[9, 10] = h
    t[10, 10] = plus
    t[10, 5] = -minus
    t[10, 6] = -h
    t[10, 9] = -h
    t[11, 11] = cos1
    t[11, 7] = sin1
    t[13, 13] = cos1
    t[13, 14] = sin1
    t[14, 14] = cos1
    t[14, 13] = sin1
    t[15, 15] = 1.0
    return t


def apply_to_matrix(
    m: np.ndarray, phi: float, mode: ChannelMode = ChannelMode.VERBATIM
) -> np.ndarray:
    """Apply the channel to an arbitrary 4x4 matrix.

    The map is linear with no affine offset, so acting on Pauli coefficients
    extends it from states to all matrices (needed for the Choi construction).
    """
    t = transfer_matrix(phi, mode)
    return linalg.pauli_assemble(t @ linalg.pauli_coefficients(m))


def choi_matrix(mode: ChannelMode, phi: float) -> np.ndarray:
    """16x16 Choi matrix: block (i, j) holds the channel image of |i><j|.

    Hermitian for all three modes; trace 4 (trace preservation); PSD exactly
    when the map is completely positive.  All modes share the transfer-matrix
    application path.
    """
    t = transfer_matrix(phi, ChannelMode(mode))
    out = np.zeros((16, 16), dtype=np.complex128)
    for i in range(4):
        for j in range(4):
            # Pauli coefficients of the matrix unit E_ij: tr(E_ij P_k) = P_k[j, i]
            block = linalg.pauli_assemble(t @ linalg.PRODUCT_BASIS[:, j, i])
            out[4 * i : 4 * i + 4, 4 * j : 4 * j + 4] = block
    return out


@dataclass(frozen=True)
class ChannelDiagnostics:
    trace_preserving_residual: float
    hermiticity_residual: float
    min_output_eigenvalue: float
    choi_min_eigenvalue: float
    mode_discrepancy: float  # max-abs gap between VERBATIM and UNITARY_ORACLE outputs


def diagnose(b: BlochState, phi: float) -> ChannelDiagnostics:
    """Run VERBATIM and UNITARY_ORACLE side by side on one input.

    Never raises on unphysical outputs - quantifying them is the point.
    """
    phi = _check_phi(phi)
    verb = transform_bloch(b, phi, ChannelMode.VERBATIM)
    m_verb = states._assemble_batch(verb.s[None], verb.t[None], verb.c[None])[0]
    m_unit = transform_unitary(states.to_density(b), phi).matrix
    herm = float(np.abs(m_verb - m_verb.conj().T).max())
    w = linalg.hermitian_eigen(0.5 * (m_verb + m_verb.conj().T)).eigenvalues
    choi_w = linalg.hermitian_eigen(choi_matrix(ChannelMode.VERBATIM, phi)).eigenvalues
    return ChannelDiagnostics(
        trace_preserving_residual=float(abs(m_verb.trace() - 1.0)),
        hermiticity_residual=herm,
        min_output_eigenvalue=float(w[0]),
        choi_min_eigenvalue=float(choi_w[0]),
        mode_discrepancy=float(np.abs(m_verb - m_unit).max()),
    )
