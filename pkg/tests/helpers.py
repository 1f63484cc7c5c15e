"""Shared oracles for the test suite.

numpy.linalg is allowed here as the independent reference implementation;
the package itself deliberately never calls it.  The component-map
reference below is a second, separately typed transcription of the printed
formulas so drift in the library's vectorized version gets caught.
"""

from __future__ import annotations

import math

import numpy as np

I2 = np.eye(2, dtype=complex)
SX = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SY = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SZ = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
YY = np.kron(SY, SY)

# (|01> - |10>)/sqrt(2) projector, written out by hand
SINGLET = 0.5 * np.array(
    [
        [0, 0, 0, 0],
        [0, 1, -1, 0],
        [0, -1, 1, 0],
        [0, 0, 0, 0],
    ],
    dtype=complex,
)


def random_density(rng: np.random.Generator, n: int = 4) -> np.ndarray:
    """Full-rank random density matrix via a normalized Gram matrix."""
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    rho = g @ g.conj().T
    return rho / rho.trace().real


def random_hermitian(rng: np.random.Generator, n: int = 4) -> np.ndarray:
    h = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return 0.5 * (h + h.conj().T)


def random_unitary2(rng: np.random.Generator) -> np.ndarray:
    w, v = np.linalg.eigh(random_hermitian(rng, 2))
    return (v * np.exp(1j * w)) @ v.conj().T


def brute_concurrence(rho: np.ndarray) -> float:
    """Textbook spin-flip concurrence straight from the non-Hermitian
    product's eigenvalues (numpy oracle)."""
    flipped = YY @ rho.conj() @ YY
    ev = np.linalg.eigvals(rho @ flipped)
    lam = np.sort(np.sqrt(np.clip(ev.real, 0.0, None)))[::-1]
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def brute_negativity(rho: np.ndarray) -> float:
    pt = rho.reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4)
    w = np.linalg.eigvalsh(pt)
    return float(-w[w < 0.0].sum())


def brute_entropy(rho_or_eigs: np.ndarray) -> float:
    """Base-2 entropy over the positive part of the spectrum."""
    arr = np.asarray(rho_or_eigs)
    w = np.linalg.eigvalsh(arr) if arr.ndim == 2 else arr
    w = w[w > 0.0]
    return float(-(w * np.log2(w)).sum())


def brute_purity(rho: np.ndarray) -> float:
    return float((rho @ rho).trace().real)


def reference_map(vec15, phi: float, symmetrized: bool = False) -> np.ndarray:
    """Independent transcription of the printed 15-component map."""
    s1, s2, s3, t1, t2, t3 = vec15[:6]
    cxx, cxy, cxz, cyx, cyy, cyz, czx, czy, czz = vec15[6:]
    cp, sp = math.cos(phi), math.sin(phi)
    c2, s2phi = math.cos(2 * phi), math.sin(2 * phi)
    plus, minus = 0.5 * (1 + c2), 0.5 * (1 - c2)
    out = np.empty(15)
    out[0] = s1 * cp - s2 * sp
    out[1] = (s1 * sp + s2 * cp) if symmetrized else (s2 * cp - s1 * sp)
    out[2] = s3 * plus + t3 * minus
    out[3] = t1 * cp - t2 * sp
    out[4] = t1 * sp + t2 * cp
    out[5] = s3 * minus + t3 * plus
    out[6] = plus * cxx + minus * cyy + 0.5 * s2phi * (cxy - cyx)
    out[7] = plus * cxy + minus * cyx - 0.5 * s2phi * (cxx + cyy)
    out[8] = cp * cxz - sp * cyz
    out[9] = plus * cyx + minus * cxy + 0.5 * s2phi * (cxx + cyy)
    out[10] = plus * cyy - minus * cxx - 0.5 * s2phi * (cxy + cyx)
    out[11] = cp * cyz + sp * cxz
    out[12] = cp * czx + sp * czy
    out[13] = cp * czy + sp * czx
    out[14] = czz
    return out


def assemble_bloch(vec15) -> np.ndarray:
    """Independent Bloch-to-matrix assembly (numpy kron oracle)."""
    s, t = vec15[:3], vec15[3:6]
    c = np.asarray(vec15[6:]).reshape(3, 3)
    paulis = (SX, SY, SZ)
    rho = np.eye(4, dtype=complex)
    for i in range(3):
        rho += s[i] * np.kron(paulis[i], I2)
        rho += t[i] * np.kron(I2, paulis[i])
        for j in range(3):
            rho += c[i, j] * np.kron(paulis[i], paulis[j])
    return 0.25 * rho
