"""Dense complex linear algebra used throughout the package.

Every matrix in play is tiny (2x2 reductions, 4x4 states, 16x16 process
matrices), so eigenproblems are solved with a cyclic complex Jacobi
iteration: at these sizes it is simple, deterministic, and accurate to
near machine precision.  The kernels compile with numba when it is
importable and run as plain Python otherwise; both paths execute the same
source.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .errors import (
    BadDimensionError,
    NoConvergenceError,
    NonFiniteError,
    NotHermitianError,
)

try:
    from numba import njit as _njit
except ImportError:  # pragma: no cover - numba is a declared dependency
    def _njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(func):
            return func

        return wrap

__all__ = [
    "IDENTITY_2",
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "PAULIS",
    "PRODUCT_BASIS",
    "EigenDecomposition",
    "hermitian_eigen",
    "eigh_batch",
    "kron",
    "partial_trace",
    "partial_transpose",
    "pauli_coefficients",
    "pauli_assemble",
]

IDENTITY_2 = np.eye(2, dtype=np.complex128)
SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=np.complex128)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=np.complex128)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=np.complex128)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)

# Sixteen product matrices P[4*mu + nu] = sigma_mu (x) sigma_nu, with
# sigma_0 = I.  They are trace-orthogonal: tr(P_k P_l) = 4 delta_kl.
PRODUCT_BASIS = np.stack(
    [
        np.kron(a, b)
        for a in (IDENTITY_2, SIGMA_X, SIGMA_Y, SIGMA_Z)
        for b in (IDENTITY_2, SIGMA_X, SIGMA_Y, SIGMA_Z)
    ]
)

for _m in (IDENTITY_2, SIGMA_X, SIGMA_Y, SIGMA_Z, PRODUCT_BASIS):
    _m.setflags(write=False)

MAX_SWEEPS = 100
OFF_DIAGONAL_TOL = 1e-13
HERMITICITY_TOL = 1e-9
_OFF_TOL2 = OFF_DIAGONAL_TOL * OFF_DIAGONAL_TOL
_PHASE_TOL = 1e-12


@_njit(cache=True, nogil=True)
def _jacobi(a, v):
    """Diagonalize Hermitian `a` in place by cyclic complex Jacobi rotations.

    `v` accumulates the eigenvector matrix (columns).  Returns the number
    of sweeps used, or -1 when the off-diagonal Frobenius norm failed to
    drop below OFF_DIAGONAL_TOL within MAX_SWEEPS sweeps.
    """
    n = a.shape[0]
    for sweep in range(MAX_SWEEPS + 1):
        off2 = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    off2 += a[i, j].real ** 2 + a[i, j].imag ** 2
        if off2 <= _OFF_TOL2:
            return sweep
        if sweep == MAX_SWEEPS:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                re = a[p, q].real
                im = a[p, q].imag
                ab = math.hypot(re, im)
                if ab == 0.0:
                    continue
                # Phase that makes the pivot real, then a classical
                # symmetric Jacobi rotation with the smaller angle.
                e = complex(re / ab, -im / ab)
                ec = complex(re / ab, im / ab)
                tau = (a[q, q].real - a[p, p].real) / (2.0 * ab)
                if tau >= 0.0:
                    tt = -1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    tt = 1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + tt * tt)
                s = tt * c
                for i in range(n):
                    aip = a[i, p]
                    aiq = a[i, q]
                    a[i, p] = c * aip + s * e * aiq
                    a[i, q] = -s * aip + c * e * aiq
                for j in range(n):
                    apj = a[p, j]
                    aqj = a[q, j]
                    a[p, j] = c * apj + s * ec * aqj
                    a[q, j] = -s * apj + c * ec * aqj
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = complex(a[p, p].real, 0.0)
                a[q, q] = complex(a[q, q].real, 0.0)
                for i in range(n):
                    vip = v[i, p]
                    viq = v[i, q]
                    v[i, p] = c * vip + s * e * viq
                    v[i, q] = -s * vip + c * e * viq
    return -1


@_njit(cache=True, nogil=True)
def _jacobi_batch(mats, vals, vecs, status):
    n = mats.shape[1]
    for k in range(mats.shape[0]):
        v = np.eye(n, dtype=np.complex128)
        status[k] = _jacobi(mats[k], v)
        for i in range(n):
            vals[k, i] = mats[k, i, i].real
        vecs[k] = v


def eigh_batch(mats: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decompose a (N, n, n) stack of Hermitian matrices.

    Fast path for bulk work: no validation, eigenvalues come back in
    solver order (unsorted), eigenvector phases are arbitrary.  The input
    stack is copied, not modified.
    """
    arr = np.array(mats, dtype=np.complex128, order="C")
    if arr.ndim != 3 or arr.shape[1] != arr.shape[2]:
        raise BadDimensionError(f"expected a (N, n, n) stack, got {arr.shape}")
    count, n = arr.shape[0], arr.shape[1]
    vals = np.empty((count, n), dtype=np.float64)
    vecs = np.empty((count, n, n), dtype=np.complex128)
    status = np.empty(count, dtype=np.int64)
    if count:
        _jacobi_batch(arr, vals, vecs, status)
        if (status < 0).any():
            raise NoConvergenceError(
                f"Jacobi iteration did not converge within {MAX_SWEEPS} sweeps"
            )
    return vals, vecs


class EigenDecomposition(NamedTuple):
    eigenvalues: np.ndarray  # real, ascending
    eigenvectors: np.ndarray  # column k pairs with eigenvalues[k]


def hermitian_eigen(m: np.ndarray, tol: float = HERMITICITY_TOL) -> EigenDecomposition:
    """Full eigen-decomposition of one Hermitian matrix.

    Eigenvalues are returned in ascending order (ties broken stably by
    solver order).  Each eigenvector is normalized so that its first
    component with modulus above 1e-12 is real and positive, making the
    output deterministic for a given input.
    """
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise BadDimensionError(f"expected a square matrix, got shape {a.shape}")
    if not np.isfinite(a).all():
        raise NonFiniteError("matrix contains NaN or infinite entries")
    residual = float(np.abs(a - a.conj().T).max()) if a.size else 0.0
    if residual > tol:
        raise NotHermitianError(
            f"hermiticity residual {residual:.3e} exceeds tolerance {tol:.3e}"
        )
    vals, vecs = eigh_batch(((a + a.conj().T) * 0.5)[None])
    w = vals[0]
    v = vecs[0]
    order = np.argsort(w, kind="stable")
    w = w[order]
    v = v[:, order]
    for k in range(v.shape[1]):
        col = v[:, k]
        nz = np.flatnonzero(np.abs(col) > _PHASE_TOL)
        if nz.size:
            z = col[nz[0]]
            col *= z.conjugate() / abs(z)
    return EigenDecomposition(w, v)


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product, promoted to complex128."""
    return np.kron(
        np.asarray(a, dtype=np.complex128), np.asarray(b, dtype=np.complex128)
    )


def _as_two_qubit(m: np.ndarray) -> np.ndarray:
    a = np.asarray(m, dtype=np.complex128)
    if a.shape != (4, 4):
        raise BadDimensionError(f"expected a 4x4 matrix, got shape {a.shape}")
    return a


def partial_trace(m: np.ndarray, keep: str) -> np.ndarray:
    """Reduced 2x2 operator of a two-qubit operator.

    keep="A" traces out the second tensor factor, keep="B" the first.
    """
    r = _as_two_qubit(m).reshape(2, 2, 2, 2)
    if keep == "A":
        return np.einsum("abcb->ac", r)
    if keep == "B":
        return np.einsum("abac->bc", r)
    raise ValueError(f'keep must be "A" or "B", got {keep!r}')


def partial_transpose(m: np.ndarray, subsystem: str = "B") -> np.ndarray:
    """Transpose one tensor factor of a two-qubit operator."""
    r = _as_two_qubit(m).reshape(2, 2, 2, 2)
    if subsystem == "B":
        return r.transpose(0, 3, 2, 1).reshape(4, 4)
    if subsystem == "A":
        return r.transpose(2, 1, 0, 3).reshape(4, 4)
    raise ValueError(f'subsystem must be "A" or "B", got {subsystem!r}')


def pauli_coefficients(m: np.ndarray) -> np.ndarray:
    """Coefficients m_k = tr(M P_k) in the Pauli product basis.

    Accepts one matrix (4, 4) -> (16,) or a stack (..., 4, 4) -> (..., 16).
    """
    a = np.asarray(m, dtype=np.complex128)
    if a.shape[-2:] != (4, 4):
        raise BadDimensionError(f"expected trailing 4x4 matrices, got {a.shape}")
    return np.einsum("kij,...ji->...k", PRODUCT_BASIS, a)


def pauli_assemble(coeffs: np.ndarray) -> np.ndarray:
    """Rebuild M = (1/4) sum_k m_k P_k from Pauli-basis coefficients.

    Accepts (16,) -> (4, 4) or a stack (..., 16) -> (..., 4, 4).
    """
    v = np.asarray(coeffs, dtype=np.complex128)
    if v.shape[-1] != 16:
        raise BadDimensionError(f"expected 16 coefficients, got shape {v.shape}")
    return 0.25 * np.tensordot(v, PRODUCT_BASIS, axes=([-1], [0]))
