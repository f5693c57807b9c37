"""Blockade-constrained configuration spaces and symmetry bookkeeping.

Configurations are bitmasks: bit b encodes the occupation of site b+1 of the
chain, so the 1-indexed "odd sites" of parity statements live on even bit
positions.  The blockade forbids two adjacent 1-bits (cyclically adjacent for
periodic chains).  All bases are stored ascending in the integer value of the
bitmask, which fixes every downstream index.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.sparse as sp

__all__ = [
    "ConstrainedBasis",
    "SectorBasis",
    "CutGeometry",
    "IllegalConfigError",
    "build_chain_basis",
    "state_index",
    "build_symmetric_sector",
    "build_momentum_sector",
    "split_and_check",
    "merge_configs",
    "half_chain_geometry",
    "quarter_intervals",
    "translate_config",
    "invert_config",
    "translation_permutation",
    "inversion_permutation",
]


class IllegalConfigError(ValueError):
    """A configuration violates the blockade or is out of range."""


def _open_configs(length: int) -> np.ndarray:
    """Ascending legal configurations of an open chain (Fibonacci count)."""
    prev2 = np.array([0], dtype=np.int64)       # length 0
    prev1 = np.array([0, 1], dtype=np.int64)    # length 1
    if length == 0:
        return prev2
    if length == 1:
        return prev1
    for l in range(2, length + 1):
        prev2, prev1 = prev1, np.concatenate([prev1, prev2 + (1 << (l - 1))])
    return prev1


@dataclass(frozen=True, eq=False)
class ConstrainedBasis:
    """Ordered set of blockade-legal configurations of an L-site chain."""

    length: int
    boundary: str                 # 'periodic' or 'open'
    configs: np.ndarray           # ascending int64 bitmasks

    @property
    def dimension(self) -> int:
        return len(self.configs)

    def is_legal(self, config: int) -> bool:
        if config < 0 or config >= (1 << self.length):
            return False
        if config & (config >> 1):
            return False
        if self.boundary == "periodic" and self.length > 1:
            if (config & 1) and (config >> (self.length - 1)) & 1:
                return False
        return True

    def index(self, config: int) -> int:
        """Ordinal of `config`; raises IllegalConfigError for bad input."""
        if not self.is_legal(config):
            raise IllegalConfigError(f"config {config:#b} is not legal for {self}")
        i = int(np.searchsorted(self.configs, config))
        return i

    def indices(self, configs: np.ndarray) -> np.ndarray:
        """Vectorized ordinal lookup; inputs must be legal."""
        return np.searchsorted(self.configs, configs)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ConstrainedBasis)
            and self.length == other.length
            and self.boundary == other.boundary
        )

    def __hash__(self) -> int:
        return hash((self.length, self.boundary))

    def __repr__(self) -> str:
        return f"ConstrainedBasis(L={self.length}, {self.boundary}, dim={self.dimension})"


@lru_cache(maxsize=None)
def build_chain_basis(L: int, boundary: str = "periodic") -> ConstrainedBasis:
    """Enumerate the blockade-legal configurations of an L-site chain.

    Periodic dimensions follow the Lucas sequence, open ones the Fibonacci
    sequence.  L = 1 periodic returns {0, 1}: a single site is not treated
    as its own neighbour.
    """
    if L < 1:
        raise ValueError("L must be >= 1")
    if boundary not in ("periodic", "open"):
        raise ValueError(f"unknown boundary {boundary!r}")
    configs = _open_configs(L)
    if boundary == "periodic" and L > 1:
        wrap = ((configs & 1) > 0) & ((configs >> (L - 1)) & 1 > 0)
        configs = configs[~wrap]
    configs.setflags(write=False)
    return ConstrainedBasis(L, boundary, configs)


def state_index(basis: ConstrainedBasis, config: int) -> int:
    """Ordinal of `config` in `basis`; IllegalConfigError if not legal."""
    return basis.index(config)


# ---------------------------------------------------------------------------
# symmetry operations on configurations
# ---------------------------------------------------------------------------

def translate_config(config: int, L: int) -> int:
    """One-site translation T: site i -> i+1 (bit b -> b+1, cyclic)."""
    mask = (1 << L) - 1
    return ((config << 1) | (config >> (L - 1))) & mask


def invert_config(config: int, L: int) -> int:
    """Inversion I: site i -> L-i+1, i.e. bit reversal of the L-bit word."""
    out = 0
    for b in range(L):
        if (config >> b) & 1:
            out |= 1 << (L - 1 - b)
    return out


def _translate_arr(configs: np.ndarray, L: int) -> np.ndarray:
    mask = (1 << L) - 1
    return ((configs << 1) | (configs >> (L - 1))) & mask


def _invert_arr(configs: np.ndarray, L: int) -> np.ndarray:
    out = np.zeros_like(configs)
    for b in range(L):
        out |= ((configs >> b) & 1) << (L - 1 - b)
    return out


def translation_permutation(basis: ConstrainedBasis) -> np.ndarray:
    """Index array perm with configs[perm[i]] = T(configs[i])."""
    return basis.indices(_translate_arr(basis.configs, basis.length))


def inversion_permutation(basis: ConstrainedBasis) -> np.ndarray:
    """Index array perm with configs[perm[i]] = I(configs[i])."""
    return basis.indices(_invert_arr(basis.configs, basis.length))


# ---------------------------------------------------------------------------
# symmetry-adapted sector bases
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SectorBasis:
    """Symmetry-adapted orthonormal basis of a momentum (and inversion) sector.

    Each basis vector is the normalized character-weighted orbit sum of its
    representative; `isometry` holds these vectors as columns in the parent
    basis, so `isometry.conj().T @ isometry = 1`.
    """

    parent: ConstrainedBasis
    momentum: float               # 0.0 or pi for symmetric sectors
    inversion: int | None         # +1 / -1, or None for momentum-only sectors
    representatives: np.ndarray
    norms: np.ndarray
    isometry: sp.csr_matrix

    @property
    def dimension(self) -> int:
        return len(self.representatives)

    def __repr__(self) -> str:
        return (
            f"SectorBasis(L={self.parent.length}, k={self.momentum:.4f}, "
            f"I={self.inversion}, dim={self.dimension})"
        )


def _sector_from_group(parent, images, characters, momentum, inversion):
    """Assemble a SectorBasis from group images of every config and characters.

    images: (n_group, dim) array, images[g] = g(configs).
    characters: length n_group complex/real characters chi(g).
    """
    configs = parent.configs
    dim = parent.dimension
    rep_of = images.min(axis=0)
    is_rep = configs == rep_of
    reps = configs[is_rep]
    nreps = len(reps)
    rep_cols = np.arange(nreps)

    rows = np.empty(len(characters) * nreps, dtype=np.int64)
    cols = np.empty_like(rows)
    vals = np.empty(rows.shape, dtype=np.complex128)
    rep_idx_in_parent = np.flatnonzero(is_rep)
    for g, chi in enumerate(characters):
        sl = slice(g * nreps, (g + 1) * nreps)
        rows[sl] = parent.indices(images[g][rep_idx_in_parent])
        cols[sl] = rep_cols
        vals[sl] = np.conj(chi)
    mat = sp.coo_matrix((vals, (rows, cols)), shape=(dim, nreps)).tocsc()
    mat.sum_duplicates()

    colnorm = np.sqrt(np.asarray(mat.multiply(mat.conj()).sum(axis=0)).ravel().real)
    keep = colnorm > 1e-6
    mat = mat[:, keep]
    norms = colnorm[keep]
    mat = mat @ sp.diags(1.0 / norms)
    if np.abs(np.asarray(mat.data).imag).max(initial=0.0) < 1e-14:
        mat = mat.real
    return SectorBasis(
        parent=parent,
        momentum=momentum,
        inversion=inversion,
        representatives=reps[keep],
        norms=norms,
        isometry=mat.tocsr(),
    )


@lru_cache(maxsize=None)
def build_symmetric_sector(L: int, momentum: float = 0.0, inversion: int = 1) -> SectorBasis:
    """Translation+inversion sector basis for momentum 0 or pi.

    Only these two momenta support inversion as a good quantum number (the
    rotated quench states carry no other momentum); other values are
    rejected.  Use `build_momentum_sector` for the remaining momenta.
    """
    if L % 2:
        raise ValueError("symmetric sectors need even L")
    if abs(momentum) > 1e-12 and abs(momentum - np.pi) > 1e-12:
        raise ValueError("momentum must be 0 or pi")
    if inversion not in (1, -1):
        raise ValueError("inversion must be +1 or -1")
    s = 1.0 if abs(momentum) < 1e-12 else -1.0

    parent = build_chain_basis(L, "periodic")
    images = np.empty((2 * L, parent.dimension), dtype=np.int64)
    cur = parent.configs.copy()
    characters = np.empty(2 * L)
    for j in range(L):
        images[j] = cur
        images[L + j] = _invert_arr(cur, L)
        characters[j] = s ** j
        characters[L + j] = inversion * s ** j
        cur = _translate_arr(cur, L)
    return _sector_from_group(parent, images, characters, float(momentum), inversion)


@lru_cache(maxsize=None)
def build_momentum_sector(L: int, m: int) -> SectorBasis:
    """Momentum-only sector basis at k = 2*pi*m/L (any m); inversion untracked."""
    parent = build_chain_basis(L, "periodic")
    images = np.empty((L, parent.dimension), dtype=np.int64)
    cur = parent.configs.copy()
    characters = np.exp(-2j * np.pi * m * np.arange(L) / L)
    for j in range(L):
        images[j] = cur
        cur = _translate_arr(cur, L)
    return _sector_from_group(parent, images, characters, 2 * np.pi * m / L, None)


# ---------------------------------------------------------------------------
# cuts and subsystem bookkeeping
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CutGeometry:
    """A region of the ring given as disjoint ascending half-open intervals."""

    length: int
    intervals: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prev_stop = 0
        for start, stop in self.intervals:
            if not (0 <= start < stop <= self.length):
                raise ValueError(f"interval ({start}, {stop}) outside [0, {self.length})")
            if start < prev_stop:
                raise ValueError("intervals must be ascending and disjoint")
            prev_stop = stop
        if not self.intervals:
            raise ValueError("region must contain at least one interval")

    @property
    def region_sites(self) -> np.ndarray:
        return np.concatenate([np.arange(a, b) for a, b in self.intervals])

    @property
    def complement_intervals(self) -> tuple[tuple[int, int], ...]:
        in_region = np.zeros(self.length, dtype=bool)
        in_region[self.region_sites] = True
        out = []
        b = 0
        while b < self.length:
            if in_region[b]:
                b += 1
                continue
            start = b
            while b < self.length and not in_region[b]:
                b += 1
            out.append((start, b))
        return tuple(out)

    @property
    def complement_sites(self) -> np.ndarray:
        return np.concatenate([np.arange(a, b) for a, b in self.complement_intervals])


def half_chain_geometry(L: int) -> CutGeometry:
    """First L//2 sites of the ring."""
    return CutGeometry(L, ((0, L // 2),))


def quarter_intervals(L: int) -> tuple[tuple[int, int], ...]:
    """Four near-equal contiguous intervals; remainder goes to the first ones."""
    base, extra = divmod(L, 4)
    sizes = [base + (1 if q < extra else 0) for q in range(4)]
    out, start = [], 0
    for size in sizes:
        out.append((start, start + size))
        start += size
    return tuple(out)


def _gather_bits(config: int, sites: np.ndarray) -> int:
    out = 0
    for j, s in enumerate(sites):
        if (config >> int(s)) & 1:
            out |= 1 << j
    return out


def _interval_id_map(geometry: CutGeometry) -> np.ndarray:
    ids = np.empty(geometry.length, dtype=np.int64)
    for n, (a, b) in enumerate(geometry.intervals + geometry.complement_intervals):
        ids[a:b] = n
    return ids


def split_and_check(config: int, geometry: CutGeometry) -> tuple[int, int, bool]:
    """Split `config` into (region, complement) bit words and test the cuts.

    The sub-configurations pack the region/complement sites in ascending
    order.  `compatible` is False exactly when an adjacent 1-pair (including
    the periodic wrap) straddles an interval boundary of the partition.
    """
    L = geometry.length
    region = _gather_bits(config, geometry.region_sites)
    complement = _gather_bits(config, geometry.complement_sites)
    ids = _interval_id_map(geometry)
    compatible = True
    for b in range(L):
        nb = (b + 1) % L
        if ids[b] != ids[nb] and (config >> b) & 1 and (config >> nb) & 1:
            compatible = False
            break
    return region, complement, compatible


def merge_configs(geometry: CutGeometry, region: int, complement: int) -> tuple[int, bool]:
    """Scatter region/complement bit words back onto the ring; check the cuts."""
    config = 0
    for j, s in enumerate(geometry.region_sites):
        if (region >> j) & 1:
            config |= 1 << int(s)
    for j, s in enumerate(geometry.complement_sites):
        if (complement >> j) & 1:
            config |= 1 << int(s)
    _, _, compatible = split_and_check(config, geometry)
    return config, compatible
