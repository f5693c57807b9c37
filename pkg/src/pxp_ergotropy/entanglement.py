"""Reduced density matrices on constrained subsystems and entanglement measures.

The partial trace never leaves the constrained spaces: a pure state on the
ring is scattered into the amplitude matrix M[a, b] indexed by legal
(region, complement) open-chain configurations, with cross-cut blockade
violations simply never receiving weight.  rho_A = M M^dagger and the
entanglement spectrum is the squared singular values of M, so region
dimensions stay at Fibonacci-product size instead of 2^|region|.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .hilbert import ConstrainedBasis, CutGeometry, build_chain_basis, quarter_intervals
from .operators import staggered_z
from .states import StateVector

__all__ = [
    "RegionBasis",
    "ReducedDensity",
    "reduced_density",
    "entanglement_spectrum",
    "entropy",
    "entropy_of",
    "mutual_information",
    "tripartite_mi",
    "qfi_density",
    "region_geometry",
    "complement_geometry",
]

SPECTRUM_TRIM = 1e-14
NEGATIVE_EIGENVALUE_ABORT = -1e-12


@dataclass(frozen=True, eq=False)
class RegionBasis:
    """Product of per-interval open-chain bases for a (possibly split) region."""

    intervals: tuple[tuple[int, int], ...]
    bases: tuple[ConstrainedBasis, ...]

    @property
    def dimension(self) -> int:
        out = 1
        for b in self.bases:
            out *= b.dimension
        return out

    def pack_indices(self, packed_words: np.ndarray) -> np.ndarray:
        """Mixed-radix index of packed region bit-words (last interval fastest)."""
        idx = np.zeros(len(packed_words), dtype=np.int64)
        offset = 0
        strides = np.ones(len(self.bases), dtype=np.int64)
        for j in range(len(self.bases) - 2, -1, -1):
            strides[j] = strides[j + 1] * self.bases[j + 1].dimension
        for j, ((a, b), basis) in enumerate(zip(self.intervals, self.bases)):
            width = b - a
            words = (packed_words >> offset) & ((1 << width) - 1)
            idx += basis.indices(words) * strides[j]
            offset += width
        return idx


def _region_basis(intervals: tuple[tuple[int, int], ...]) -> RegionBasis:
    return RegionBasis(intervals, tuple(build_chain_basis(b - a, "open") for a, b in intervals))


def _merge_adjacent(intervals) -> tuple[tuple[int, int], ...]:
    out = []
    for a, b in sorted(intervals):
        if out and out[-1][1] == a:
            out[-1] = (out[-1][0], b)
        else:
            out.append((a, b))
    return tuple(tuple(i) for i in out)


def region_geometry(L: int, *interval_groups) -> CutGeometry:
    """CutGeometry for the union of interval lists, merging adjacent pieces."""
    intervals = [iv for group in interval_groups for iv in group]
    return CutGeometry(L, _merge_adjacent(intervals))


def complement_geometry(geometry: CutGeometry) -> CutGeometry:
    return CutGeometry(geometry.length, geometry.complement_intervals)


@lru_cache(maxsize=None)
def _cut_maps(basis: ConstrainedBasis, geometry: CutGeometry):
    """Per parent config: (region index, complement index) plus both bases."""
    if geometry.length != basis.length:
        raise ValueError("geometry length does not match basis")
    region = _region_basis(geometry.intervals)
    comp = _region_basis(geometry.complement_intervals)
    configs = basis.configs
    rwords = np.zeros(basis.dimension, dtype=np.int64)
    cwords = np.zeros(basis.dimension, dtype=np.int64)
    for j, s in enumerate(geometry.region_sites):
        rwords |= ((configs >> int(s)) & 1) << j
    for j, s in enumerate(geometry.complement_sites):
        cwords |= ((configs >> int(s)) & 1) << j
    return region, comp, region.pack_indices(rwords), comp.pack_indices(cwords)


def amplitude_matrix(state: StateVector, geometry: CutGeometry):
    """M[a, b] = psi(merge(a, b)); zero where the cut blockade forbids."""
    basis = state.basis
    if not isinstance(basis, ConstrainedBasis) or basis.boundary != "periodic":
        raise ValueError("amplitude matrices need a state on a periodic parent basis")
    region, comp, rows, cols = _cut_maps(basis, geometry)
    M = np.zeros((region.dimension, comp.dimension), dtype=np.complex128)
    M[rows, cols] = state.amplitudes
    return M, region, comp


@dataclass
class ReducedDensity:
    """Hermitian PSD matrix on a region's product basis, unit trace."""

    basis: RegionBasis
    matrix: np.ndarray

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix).real)


def reduced_density(state: StateVector, geometry: CutGeometry) -> ReducedDensity:
    M, region, _ = amplitude_matrix(state, geometry)
    return ReducedDensity(region, M @ M.conj().T)


def entanglement_spectrum(state: StateVector, geometry: CutGeometry) -> np.ndarray:
    """Descending Schmidt probabilities across the cut, trimmed below 1e-14."""
    M, _, _ = amplitude_matrix(state, geometry)
    probs = np.linalg.svd(M, compute_uv=False) ** 2
    return probs[probs > SPECTRUM_TRIM]


def density_spectrum(rho: ReducedDensity | np.ndarray) -> np.ndarray:
    """Descending eigenvalues of a density matrix with tiny-negative clipping."""
    mat = rho.matrix if isinstance(rho, ReducedDensity) else np.asarray(rho)
    vals = np.linalg.eigvalsh(mat)[::-1]
    if vals.min(initial=0.0) < NEGATIVE_EIGENVALUE_ABORT:
        raise ValueError(f"density matrix has eigenvalue {vals.min():.3e} < {NEGATIVE_EIGENVALUE_ABORT}")
    return np.clip(vals, 0.0, None)


def entropy(probs: np.ndarray) -> float:
    """Von Neumann entropy -sum p ln p in nats, with 0 ln 0 = 0."""
    p = np.asarray(probs, dtype=float)
    p = p[p > 0.0]
    return float(-np.dot(p, np.log(p)))


def entropy_of(state: StateVector, geometry: CutGeometry) -> float:
    return entropy(entanglement_spectrum(state, geometry))


def mutual_information(state: StateVector, A, C) -> float:
    """I(A:C) = S(A) + S(C) - S(AC) for disjoint interval lists A and C."""
    L = state.basis.length
    sa = entropy_of(state, region_geometry(L, A))
    sc = entropy_of(state, region_geometry(L, C))
    sac = entropy_of(state, region_geometry(L, A, C))
    return sa + sc - sac


def tripartite_mi(state: StateVector, A=None, B=None, C=None) -> float:
    """I(A:B:C) from the seven-entropy combination; defaults to ring quarters."""
    L = state.basis.length
    if A is None or B is None or C is None:
        qa, qb, qc, _ = quarter_intervals(L)
        A, B, C = [qa], [qb], [qc]
    s = lambda *groups: entropy_of(state, region_geometry(L, *groups))
    return (
        s(A) + s(B) + s(C)
        - s(A, B) - s(B, C) - s(A, C)
        + s(A, B, C)
    )


def qfi_density(state: StateVector) -> float:
    """Quantum Fisher information density: variance of the staggered Z per site."""
    vals = staggered_z(state.basis)
    w = np.abs(state.amplitudes) ** 2
    mean = float(np.dot(w, vals))
    second = float(np.dot(w, vals**2))
    return (second - mean**2) / state.basis.length
