"""Forward-scattering tower and scar/thermal separation in the zero shell.

Degenerate E = 0 eigenvectors hybridize the scar with exponentially many
thermal states.  Sandwiching the tower projector between shell projectors
and diagonalizing G_ij = sum_n <E_i|n><n|E_j> re-fixes the physical
direction: the top eigenvector is the scar, the orthocomplement the thermal
ensemble, and the eigenvalues measure tower overlap.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .hilbert import ConstrainedBasis, build_chain_basis
from .operators import fsa_raising
from .states import StateVector, z2_config

__all__ = ["FsaTower", "ScarSplit", "fsa_basis", "separate_scar"]

MULTI_SCAR_THRESHOLD = 0.5


@dataclass(frozen=True)
class FsaTower:
    """Normalized tower |n> = (H+)^n |Z2> / ||.||, n = 0..L."""

    basis: ConstrainedBasis
    vectors: np.ndarray       # (dim, n_states), orthonormal columns

    @property
    def size(self) -> int:
        return self.vectors.shape[1]


@dataclass(frozen=True)
class ScarSplit:
    scar: StateVector
    thermal: list[StateVector]
    fsa_weights: np.ndarray   # descending eigenvalues of the projected projector


def fsa_basis(L: int) -> FsaTower:
    """Generate the forward-scattering tower from |Z2> on the periodic chain."""
    if L % 2:
        raise ValueError("the tower needs even L")
    basis = build_chain_basis(L, "periodic")
    hplus, _ = fsa_raising(basis)
    v = np.zeros(basis.dimension)
    v[basis.index(z2_config(L))] = 1.0
    columns = [v]
    for _ in range(L):
        v = hplus @ v
        norm = np.linalg.norm(v)
        if norm < 1e-12:
            break
        v = v / norm
        columns.append(v)
    return FsaTower(basis, np.array(columns).T)


def separate_scar(shell_vectors: np.ndarray, tower: FsaTower) -> ScarSplit:
    """Split a degenerate shell into one scar and the thermal orthocomplement.

    shell_vectors holds orthonormal shell eigenvectors as columns on the same
    basis as the tower.  Emits a warning when more than one eigenvalue of the
    projected projector exceeds 0.5 (only the top vector is returned as the
    scar either way).
    """
    if shell_vectors.ndim != 2 or shell_vectors.shape[1] == 0:
        raise ValueError("shell must contain at least one vector")
    A = shell_vectors.conj().T @ tower.vectors
    G = A @ A.conj().T
    weights, U = np.linalg.eigh(G)
    weights = weights[::-1]
    U = U[:, ::-1]
    if len(weights) > 1 and weights[1] > MULTI_SCAR_THRESHOLD:
        warnings.warn(
            f"multiple tower-aligned directions in the shell (weights {weights[:2]})",
            stacklevel=2,
        )
    vectors = shell_vectors @ U
    scar = StateVector(tower.basis, vectors[:, 0])
    thermal = [StateVector(tower.basis, vectors[:, j]) for j in range(1, vectors.shape[1])]
    return ScarSplit(scar=scar, thermal=thermal, fsa_weights=np.clip(weights, 0.0, None))
