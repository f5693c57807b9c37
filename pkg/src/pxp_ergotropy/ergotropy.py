"""Passive-state pairing, bound energy, ergotropy, and the extraction unitary.

All reported energies are shifted so the subsystem ground state sits at zero:
E = tr(rho_A H_A) - E_gs splits as E = W + Q with Q the passive-state energy
obtained by pairing the descending entanglement spectrum against the ascending
subsystem spectrum.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.sparse as sp

from .entanglement import ReducedDensity, amplitude_matrix, density_spectrum
from .hilbert import CutGeometry
from .operators import subsystem_hamiltonian
from .states import StateVector

__all__ = [
    "ErgotropyBreakdown",
    "passive_energy",
    "subsystem_energy",
    "ergotropy",
    "optimal_unitary",
    "subsystem_spectrum",
]


@dataclass(frozen=True)
class ErgotropyBreakdown:
    """Ground-shifted subsystem energy E split into ergotropy W and bound Q."""

    E: float
    W: float
    Q: float
    raw_energy: float      # unshifted tr(rho_A H_A)
    ground_energy: float


@lru_cache(maxsize=None)
def subsystem_spectrum(l: int):
    """Eigen-decomposition of H_A for an l-site subsystem, energies shifted."""
    H = subsystem_hamiltonian(l).toarray()
    vals, vecs = np.linalg.eigh(H)
    return vals - vals[0], vecs, float(vals[0])


def passive_energy(probs: np.ndarray, energies: np.ndarray) -> float:
    """Q = sum_k probs[k] * energies[k] for descending probs, ascending energies.

    `energies` must be pre-shifted so energies[0] = 0; by the rearrangement
    inequality this pairing minimizes over all population-to-level matchings.
    """
    probs = np.asarray(probs, dtype=float)
    energies = np.asarray(energies, dtype=float)
    if len(probs) > len(energies):
        raise ValueError(f"{len(probs)} populations for {len(energies)} levels")
    if np.any(np.diff(probs) > 1e-10):
        raise ValueError("probabilities must be sorted descending")
    if np.any(np.diff(energies) < -1e-10):
        raise ValueError("energies must be sorted ascending")
    return float(np.dot(probs, energies[: len(probs)]))


def _contiguous_region_length(geometry: CutGeometry) -> int:
    if len(geometry.intervals) != 1:
        raise ValueError("subsystem energetics need a single contiguous region")
    a, b = geometry.intervals[0]
    return b - a


def subsystem_energy(state: StateVector, geometry: CutGeometry, H_A=None) -> float:
    """Ground-shifted subsystem energy tr(rho_A H_A) - E_gs."""
    l = _contiguous_region_length(geometry)
    if H_A is None:
        H_A = subsystem_hamiltonian(l)
    M, _, _ = amplitude_matrix(state, geometry)
    raw = float(np.vdot(M, H_A @ M).real)
    _, _, e_gs = subsystem_spectrum(l)
    return raw - e_gs


def ergotropy(state: StateVector, geometry: CutGeometry) -> ErgotropyBreakdown:
    """Full E = W + Q breakdown for the state reduced to `geometry`."""
    l = _contiguous_region_length(geometry)
    H_A = subsystem_hamiltonian(l)
    M, _, _ = amplitude_matrix(state, geometry)
    raw = float(np.vdot(M, H_A @ M).real)
    probs = np.linalg.svd(M, compute_uv=False) ** 2
    energies, _, e_gs = subsystem_spectrum(l)
    Q = passive_energy(np.sort(probs)[::-1], energies)
    E = raw - e_gs
    return ErgotropyBreakdown(E=E, W=E - Q, Q=Q, raw_energy=raw, ground_energy=e_gs)


def optimal_unitary(rho: ReducedDensity | np.ndarray, H_A) -> np.ndarray:
    """Unitary pairing descending rho-populations with ascending H_A levels.

    Columns map the n-th entanglement eigenvector to the n-th energy
    eigenvector; any completion on a rank-deficient orthocomplement yields
    the same passive energy.
    """
    mat = rho.matrix if isinstance(rho, ReducedDensity) else np.asarray(rho)
    density_spectrum(mat)    # validates PSD within tolerance
    pvals, pvecs = np.linalg.eigh(mat)
    pvecs = pvecs[:, ::-1]   # descending populations
    H = H_A.toarray() if sp.issparse(H_A) else np.asarray(H_A)
    _, evecs = np.linalg.eigh(H)
    return evecs @ pvecs.conj().T
