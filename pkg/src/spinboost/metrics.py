"""Entanglement and mixedness measures for two-qubit density matrices.

All entropies are in bits (log base 2), so the global maximum is 2 and each
marginal maxes out at 1.  Every measure is also computed mechanically for
*unphysical* matrices (negative eigenvalues beyond tolerance): square roots
and logarithms are taken over the positive part of the spectrum, the raw
minimum eigenvalue is carried along untouched, and a `physical` flag lets
downstream consumers treat such rows as diagnostics.  Range clipping of the
results happens only when the input is physical.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from . import linalg
from .states import POSITIVITY_TOL, DensityMatrix

__all__ = [
    "CLIP_TOL",
    "MetricsRecord",
    "concurrence",
    "negativity",
    "von_neumann_entropy",
    "marginal_entropies",
    "purity",
    "compute_record",
    "batch_records",
]

# Eigenvalues in [-CLIP_TOL, 0) are rounding noise and treated as 0 inside
# entropies and square roots; anything more negative marks the state
# unphysical and is excluded from logs/roots but never hidden.
CLIP_TOL = 1e-9

_SPIN_FLIP = np.kron(linalg.SIGMA_Y, linalg.SIGMA_Y)
_SPIN_FLIP.setflags(write=False)


def _as_density(d: Union[DensityMatrix, np.ndarray]) -> DensityMatrix:
    return d if isinstance(d, DensityMatrix) else DensityMatrix(np.asarray(d))


def _positive_part_entropy(w: np.ndarray) -> float:
    pos = w[w > 0.0]
    return float(-(pos * np.log2(pos)).sum()) if pos.size else 0.0


def concurrence(d: Union[DensityMatrix, np.ndarray]) -> float:
    """Wootters concurrence max{0, l1 - l2 - l3 - l4}, where l_i are the
    descending square roots of the eigenvalues of rho rho~ and
    rho~ = (sy x sy) rho* (sy x sy) is the spin flip.

    Computed through the Hermitian reduction sqrt(rho) rho~ sqrt(rho), which
    has the same spectrum as rho rho~, so a Hermitian solver suffices.
    sqrt(rho) uses the positive part of the spectrum; the result is clipped
    to [0, 1] only for physical inputs.
    """
    d = _as_density(d)
    w, v = d.eigen
    root = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T
    flipped = _SPIN_FLIP @ d.matrix.conj() @ _SPIN_FLIP
    mw = linalg.hermitian_eigen(root @ flipped @ root).eigenvalues
    lam = np.sqrt(np.clip(mw, 0.0, None))  # ascending
    value = max(0.0, float(lam[3] - lam[2] - lam[1] - lam[0]))
    return min(value, 1.0) if d.physical else value


def negativity(d: Union[DensityMatrix, np.ndarray]) -> float:
    """Sum of |negative eigenvalues| of the partial transpose.  Positive iff
    entangled for two qubits (PPT is exact at 2x2)."""
    d = _as_density(d)
    w = linalg.hermitian_eigen(linalg.partial_transpose(d.matrix, "B")).eigenvalues
    return float(-w[w < 0.0].sum())


def von_neumann_entropy(d: Union[DensityMatrix, np.ndarray]) -> float:
    """Entropy -sum lam log2(lam) with 0 log 0 = 0, over the positive part
    of the spectrum (negative eigenvalues contribute nothing and flag the
    state instead)."""
    d = _as_density(d)
    return _positive_part_entropy(d.eigenvalues)


def marginal_entropies(d: Union[DensityMatrix, np.ndarray]) -> tuple[float, float]:
    """Base-2 entropies of the two reduced single-qubit states (A, B)."""
    d = _as_density(d)
    ent = []
    for keep in ("A", "B"):
        w = linalg.hermitian_eigen(linalg.partial_trace(d.matrix, keep)).eigenvalues
        ent.append(_positive_part_entropy(w))
    return ent[0], ent[1]


def purity(d: Union[DensityMatrix, np.ndarray]) -> float:
    """Tr rho^2; 1 exactly for pure states, 1/4 for the maximally mixed."""
    d = _as_density(d)
    return float(np.einsum("ij,ij->", d.matrix, d.matrix.conj()).real)


@dataclass(frozen=True)
class MetricsRecord:
    """One evaluated grid point.

    Declared ranges (concurrence in [0,1], entropies in [0,2]/[0,1], purity
    <= 1) are enforced only when `physical` is true; otherwise the raw
    positive-part values pass through.  `min_eigenvalue` is never clipped.
    """

    phi: float
    concurrence: float
    negativity: float
    entropy_global: float
    entropy_a: float
    entropy_b: float
    purity: float
    min_eigenvalue: float
    physical: bool
    param: Optional[float] = None


def compute_record(
    d: Union[DensityMatrix, np.ndarray],
    phi: float = 0.0,
    param: Optional[float] = None,
) -> MetricsRecord:
    """Evaluate every metric on one density matrix."""
    d = _as_density(d)
    conc = concurrence(d)
    neg = negativity(d)
    ent = von_neumann_entropy(d)
    ent_a, ent_b = marginal_entropies(d)
    pur = purity(d)
    if d.physical:
        ent = min(max(ent, 0.0), 2.0)
        ent_a = min(max(ent_a, 0.0), 1.0)
        ent_b = min(max(ent_b, 0.0), 1.0)
        pur = min(pur, 1.0)
    return MetricsRecord(
        phi=float(phi),
        concurrence=conc,
        negativity=neg,
        entropy_global=ent,
        entropy_a=ent_a,
        entropy_b=ent_b,
        purity=pur,
        min_eigenvalue=d.min_eigenvalue,
        physical=d.physical,
        param=None if param is None else float(param),
    )


def _entropy_batch(w: np.ndarray) -> np.ndarray:
    """Positive-part entropy along the last axis of an eigenvalue stack."""
    pos = w > 0.0
    safe = np.where(pos, w, 1.0)
    return -(safe * np.log2(safe)).sum(axis=-1)


def _metrics_arrays(rhos: np.ndarray, positivity_tol: float = POSITIVITY_TOL) -> dict:
    """Vectorized metric pipeline for a (N,4,4) stack.

    Must stay numerically equivalent to the scalar functions above (there is
    a test pinning scalar/batch agreement); the batch path exists because
    sweeps evaluate 10^4-10^6 points.
    """
    rhos = np.ascontiguousarray(rhos, dtype=np.complex128)
    n = rhos.shape[0]
    w, v = linalg.eigh_batch(rhos)
    min_eig = w.min(axis=1)
    physical = min_eig >= -positivity_tol

    entropy = _entropy_batch(w)
    pur = np.einsum("nij,nij->n", rhos, rhos.conj()).real

    sq = np.sqrt(np.clip(w, 0.0, None))
    root = (v * sq[:, None, :]) @ np.conjugate(np.swapaxes(v, 1, 2))
    flipped = _SPIN_FLIP @ rhos.conj() @ _SPIN_FLIP
    mw, _ = linalg.eigh_batch(root @ flipped @ root)
    lam = np.sort(np.sqrt(np.clip(mw, 0.0, None)), axis=1)
    conc = np.maximum(lam[:, 3] - lam[:, 2] - lam[:, 1] - lam[:, 0], 0.0)
    conc = np.where(physical, np.minimum(conc, 1.0), conc)

    r5 = rhos.reshape(n, 2, 2, 2, 2)
    pt = r5.transpose(0, 1, 4, 3, 2).reshape(n, 4, 4)
    ptw, _ = linalg.eigh_batch(pt)
    neg = np.where(ptw < 0.0, -ptw, 0.0).sum(axis=1)

    wa, _ = linalg.eigh_batch(np.einsum("nabcb->nac", r5))
    wb, _ = linalg.eigh_batch(np.einsum("nabac->nbc", r5))
    ent_a = _entropy_batch(wa)
    ent_b = _entropy_batch(wb)

    entropy = np.where(physical, np.clip(entropy, 0.0, 2.0), entropy)
    ent_a = np.where(physical, np.clip(ent_a, 0.0, 1.0), ent_a)
    ent_b = np.where(physical, np.clip(ent_b, 0.0, 1.0), ent_b)
    pur = np.where(physical, np.minimum(pur, 1.0), pur)

    return {
        "concurrence": conc,
        "negativity": neg,
        "entropy_global": entropy,
        "entropy_a": ent_a,
        "entropy_b": ent_b,
        "purity": pur,
        "min_eigenvalue": min_eig,
        "physical": physical,
    }


def batch_records(
    rhos: np.ndarray,
    phis: np.ndarray,
    params: Optional[np.ndarray] = None,
    positivity_tol: float = POSITIVITY_TOL,
) -> list[MetricsRecord]:
    """Evaluate a (N,4,4) density stack against matched phi (and optional
    secondary-parameter) arrays, one MetricsRecord per row."""
    arrays = _metrics_arrays(rhos, positivity_tol)
    cols = {k: a.tolist() for k, a in arrays.items()}
    phi_list = np.asarray(phis, dtype=np.float64).tolist()
    param_list = (
        None if params is None else np.asarray(params, dtype=np.float64).tolist()
    )
    out = []
    for i, phi in enumerate(phi_list):
        out.append(
            MetricsRecord(
                phi=phi,
                concurrence=cols["concurrence"][i],
                negativity=cols["negativity"][i],
                entropy_global=cols["entropy_global"][i],
                entropy_a=cols["entropy_a"][i],
                entropy_b=cols["entropy_b"][i],
                purity=cols["purity"][i],
                min_eigenvalue=cols["min_eigenvalue"][i],
                physical=cols["physical"][i],
                param=None if param_list is None else param_list[i],
            )
        )
    return out
