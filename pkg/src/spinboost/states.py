"""Two-qubit states in the Bloch-vector / correlation-tensor picture.

A two-qubit density matrix is parameterized by 15 real numbers,

    rho = (1/4) (I + sum_i s_i sigma_i x I
                   + sum_j t_j I x sigma_j
                   + sum_ij c_ij sigma_i x sigma_j),

where s and t are the local Bloch vectors of the two qubits and c is the
3x3 correlation tensor.  BlochState carries the parameters, DensityMatrix
the assembled 4x4 matrix; conversion in both directions is exact up to
rounding.  Positivity is deliberately *not* enforced at construction:
the transformation studied here can drive physical states out of the
state space, and those outputs must flow through the metrics flagged,
not rejected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Union

import numpy as np

from . import linalg
from .errors import BadDimensionError, NonFiniteError, NotHermitianError, OutOfRangeError

__all__ = [
    "POSITIVITY_TOL",
    "BlochState",
    "DensityMatrix",
    "Werner",
    "XState",
    "GenericPure",
    "Explicit",
    "StateFamily",
    "ValidationReport",
    "make_state",
    "to_density",
    "from_density",
    "validate",
]

POSITIVITY_TOL = 1e-9
TRACE_TOL = 1e-9


def _frozen_array(values, shape, name):
    arr = np.array(values, dtype=np.float64)
    if arr.shape != shape:
        raise BadDimensionError(f"{name} must have shape {shape}, got {arr.shape}")
    if not np.isfinite(arr).all():
        raise NonFiniteError(f"{name} contains NaN or infinite entries")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class BlochState:
    """The 15 Bloch parameters (s, t, c) of a two-qubit state.

    Finiteness and shape are checked; magnitudes are not, because the
    map under study legitimately produces parameter sets with no valid
    density matrix.  Use validate() / DensityMatrix.physical for that.
    """

    s: np.ndarray
    t: np.ndarray
    c: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "s", _frozen_array(self.s, (3,), "s"))
        object.__setattr__(self, "t", _frozen_array(self.t, (3,), "t"))
        object.__setattr__(self, "c", _frozen_array(self.c, (3, 3), "c"))

    def as_vector(self) -> np.ndarray:
        """The parameters flattened as (s1 s2 s3 t1 t2 t3 c11 c12 ... c33)."""
        return np.concatenate([self.s, self.t, self.c.ravel()])

    @classmethod
    def from_vector(cls, v) -> "BlochState":
        v = np.asarray(v, dtype=np.float64)
        if v.shape != (15,):
            raise BadDimensionError(f"expected 15 parameters, got shape {v.shape}")
        return cls(v[:3], v[3:6], v[6:].reshape(3, 3))


def _assemble_batch(s: np.ndarray, t: np.ndarray, c: np.ndarray) -> np.ndarray:
    """(N,3), (N,3), (N,3,3) Bloch parameters -> (N,4,4) density matrices."""
    n = s.shape[0]
    coeffs = np.zeros((n, 4, 4))
    coeffs[:, 0, 0] = 1.0
    coeffs[:, 1:, 0] = s
    coeffs[:, 0, 1:] = t
    coeffs[:, 1:, 1:] = c
    return linalg.pauli_assemble(coeffs.reshape(n, 16))


def _extract_batch(rhos: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(N,4,4) density matrices -> (s, t, c) Bloch parameter stacks."""
    coeffs = linalg.pauli_coefficients(rhos).real.reshape(-1, 4, 4)
    return coeffs[:, 1:, 0], coeffs[:, 0, 1:], coeffs[:, 1:, 1:]


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A 4x4 unit-trace Hermitian matrix with positivity diagnostics.

    Construction rejects wrong shapes, non-finite entries, hermiticity
    residuals above 1e-9 and trace deviations above 1e-9.  Negative
    eigenvalues are allowed: `physical` reports whether the spectrum
    clears -positivity_tol, and the eigen-decomposition is computed
    lazily and cached.
    """

    matrix: np.ndarray
    positivity_tol: float = POSITIVITY_TOL

    def __post_init__(self):
        m = np.array(self.matrix, dtype=np.complex128)
        if m.shape != (4, 4):
            raise BadDimensionError(f"expected a 4x4 matrix, got shape {m.shape}")
        if not np.isfinite(m).all():
            raise NonFiniteError("matrix contains NaN or infinite entries")
        residual = float(np.abs(m - m.conj().T).max())
        if residual > linalg.HERMITICITY_TOL:
            raise NotHermitianError(
                f"hermiticity residual {residual:.3e} exceeds {linalg.HERMITICITY_TOL:.1e}"
            )
        trace_err = abs(m.trace() - 1.0)
        if trace_err > TRACE_TOL:
            raise OutOfRangeError(f"trace must be 1 within {TRACE_TOL:.1e}, off by {trace_err:.3e}")
        m = 0.5 * (m + m.conj().T)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @cached_property
    def eigen(self) -> linalg.EigenDecomposition:
        return linalg.hermitian_eigen(self.matrix)

    @property
    def eigenvalues(self) -> np.ndarray:
        return self.eigen.eigenvalues

    @property
    def min_eigenvalue(self) -> float:
        return float(self.eigen.eigenvalues[0])

    @property
    def physical(self) -> bool:
        return self.min_eigenvalue >= -self.positivity_tol


def _check_range(name: str, value: float, lo: float, hi: float) -> float:
    v = float(value)
    if not (math.isfinite(v) and lo <= v <= hi):
        raise OutOfRangeError(f"{name}={value!r} outside [{lo}, {hi}]")
    return v


@dataclass(frozen=True)
class Werner:
    """Singlet/identity mixture: zero Bloch vectors, c = -x * I.

    Physical for x in [-1/3, 1]; the full parameter domain [-1, 1] is
    accepted so unphysical corners stay reachable on purpose.
    """

    x: float

    def __post_init__(self):
        object.__setattr__(self, "x", _check_range("x", self.x, -1.0, 1.0))


@dataclass(frozen=True)
class XState:
    """Zero Bloch vectors with a diagonal correlation tensor."""

    cxx: float
    cyy: float
    czz: float

    def __post_init__(self):
        for name in ("cxx", "cyy", "czz"):
            object.__setattr__(
                self, name, _check_range(name, getattr(self, name), -1.0, 1.0)
            )


@dataclass(frozen=True)
class GenericPure:
    """One-parameter pure family: s = (p,0,0), t = (-p,0,0),
    c = diag(-1, -q, -q) with q = sqrt(1-p^2).

    p = 0 is maximally entangled, p = 1 is a product state.
    """

    p: float

    def __post_init__(self):
        object.__setattr__(self, "p", _check_range("p", self.p, 0.0, 1.0))


@dataclass(frozen=True)
class Explicit:
    """A caller-supplied Bloch parameter set, each entry in [-1, 1]."""

    bloch: BlochState

    def __post_init__(self):
        if not isinstance(self.bloch, BlochState):
            raise TypeError("Explicit expects a BlochState")
        v = self.bloch.as_vector()
        if np.abs(v).max() > 1.0:
            raise OutOfRangeError("explicit Bloch parameters must lie in [-1, 1]")


StateFamily = Union[Werner, XState, GenericPure, Explicit]


def make_state(family: StateFamily) -> BlochState:
    """Bloch parameters of a family member."""
    if isinstance(family, Werner):
        return BlochState(np.zeros(3), np.zeros(3), -family.x * np.eye(3))
    if isinstance(family, XState):
        c = np.diag([family.cxx, family.cyy, family.czz])
        return BlochState(np.zeros(3), np.zeros(3), c)
    if isinstance(family, GenericPure):
        p = family.p
        q = math.sqrt(max(0.0, 1.0 - p * p))
        return BlochState(
            np.array([p, 0.0, 0.0]),
            np.array([-p, 0.0, 0.0]),
            np.diag([-1.0, -q, -q]),
        )
    if isinstance(family, Explicit):
        return family.bloch
    raise TypeError(f"unknown state family: {family!r}")


def to_density(b: BlochState, positivity_tol: float = POSITIVITY_TOL) -> DensityMatrix:
    """Assemble the 4x4 density matrix of a Bloch parameter set."""
    rho = _assemble_batch(b.s[None], b.t[None], b.c[None])[0]
    return DensityMatrix(rho, positivity_tol)


def from_density(d: Union[DensityMatrix, np.ndarray]) -> BlochState:
    """Extract Bloch parameters from a density matrix (exact inverse of
    to_density up to rounding)."""
    m = d.matrix if isinstance(d, DensityMatrix) else DensityMatrix(d).matrix
    s, t, c = _extract_batch(m[None])
    return BlochState(s[0], t[0], c[0])


@dataclass(frozen=True)
class ValidationReport:
    hermiticity_residual: float
    trace_residual: float
    min_eigenvalue: float
    physical: bool


def validate(
    d: Union[DensityMatrix, BlochState, np.ndarray],
    positivity_tol: float = POSITIVITY_TOL,
) -> ValidationReport:
    """Physicality diagnostics for a state; never raises on unphysical input."""
    if isinstance(d, BlochState):
        m = _assemble_batch(d.s[None], d.t[None], d.c[None])[0]
    elif isinstance(d, DensityMatrix):
        m = d.matrix
    else:
        m = np.asarray(d, dtype=np.complex128)
        if m.shape != (4, 4):
            raise BadDimensionError(f"expected a 4x4 matrix, got shape {m.shape}")
        if not np.isfinite(m).all():
            raise NonFiniteError("matrix contains NaN or infinite entries")
    herm = float(np.abs(m - m.conj().T).max())
    trace_err = float(abs(m.trace() - 1.0))
    w = linalg.hermitian_eigen(0.5 * (m + m.conj().T)).eigenvalues
    min_eig = float(w[0])
    return ValidationReport(herm, trace_err, min_eig, min_eig >= -positivity_tol)
