"""Dense spectral decomposition and degenerate-shell extraction."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .operators import hermiticity_defect

__all__ = [
    "SpectralDecomposition",
    "dense_eigh",
    "zero_energy_shell",
    "shell_stability_check",
    "ground_energy",
]

HERMITICITY_TOL = 1e-12


@dataclass(frozen=True)
class SpectralDecomposition:
    """Ascending eigenvalues with aligned orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dimension(self) -> int:
        return len(self.eigenvalues)


def _as_dense(op) -> np.ndarray:
    if sp.issparse(op):
        return op.toarray()
    return np.asarray(op)


def dense_eigh(op) -> SpectralDecomposition:
    """Full eigendecomposition of a Hermitian operator; rejects non-Hermitian input."""
    if sp.issparse(op):
        defect = hermiticity_defect(op)
    else:
        mat = np.asarray(op)
        defect = float(np.abs(mat - mat.conj().T).max(initial=0.0))
    if defect > HERMITICITY_TOL:
        raise ValueError(f"operator is not Hermitian (|M - M^dag|_max = {defect:.3e})")
    vals, vecs = np.linalg.eigh(_as_dense(op))
    return SpectralDecomposition(vals, vecs)


def zero_energy_shell(dec: SpectralDecomposition, tol: float = 1e-10) -> np.ndarray:
    """Indices of the degenerate E = 0 shell, |E| strictly below tol."""
    if tol < 0:
        raise ValueError("tol must be >= 0")
    return np.flatnonzero(np.abs(dec.eigenvalues) < tol)


def shell_stability_check(dec: SpectralDecomposition, lo: float = 1e-12, hi: float = 1e-8) -> int:
    """Abort if the zero-shell dimension depends on tol within [lo, hi]."""
    d_lo = len(zero_energy_shell(dec, lo))
    d_hi = len(zero_energy_shell(dec, hi))
    if d_lo != d_hi:
        near = np.sort(np.abs(dec.eigenvalues))[: d_hi + 2]
        raise RuntimeError(
            "zero shell is not tol-stable: "
            f"dim({lo:g}) = {d_lo}, dim({hi:g}) = {d_hi}; smallest |E|: {near}"
        )
    return d_lo


def ground_energy(op) -> float:
    """Minimum eigenvalue; 1-d input is treated as a diagonal operator."""
    if not sp.issparse(op):
        arr = np.asarray(op)
        if arr.ndim == 1:
            return float(arr.min())
    return float(dense_eigh(op).eigenvalues[0])
