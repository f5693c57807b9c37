"""Named states: Z2, scar-thermal interpolations, projected rotated states.

The global rotation e^{-i theta/2 sum_i Y_i} acting on |Z2> = |1010...>
(1s on odd sites) followed by the blockade projection has closed-form real
amplitudes: with s = sin(theta/2), c = cos(theta/2) a legal configuration
sigma picks up

    amp(sigma) = (-1)^{n0_odd} * s^(n0_odd + n1_even) * c^(L - n0_odd - n1_even)

where n0_odd counts empty odd sites and n1_even occupied even sites.  The
monomial is validated against the full-space rotate-then-project oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hilbert import ConstrainedBasis, SectorBasis, _translate_arr

__all__ = [
    "StateVector",
    "z2_config",
    "z2_state",
    "interpolate",
    "rotated_amplitudes",
    "rotated_state",
    "rotated_state_sector",
    "expand_sector_state",
]


@dataclass
class StateVector:
    """Complex amplitudes over a ConstrainedBasis or SectorBasis."""

    basis: object
    amplitudes: np.ndarray

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=np.complex128)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def overlap(self, other: "StateVector") -> complex:
        return complex(np.vdot(self.amplitudes, other.amplitudes))


def z2_config(L: int) -> int:
    """Bitmask of |Z2> = |1010...>: 1s on odd sites, i.e. even bit positions."""
    return sum(1 << b for b in range(0, L, 2))


def z2_state(basis: ConstrainedBasis) -> StateVector:
    if basis.length % 2:
        raise ValueError("Z2 state needs even L")
    amps = np.zeros(basis.dimension, dtype=np.complex128)
    amps[basis.index(z2_config(basis.length))] = 1.0
    return StateVector(basis, amps)


def interpolate(scar: StateVector, thermal: StateVector, lam: float) -> StateVector:
    """(lam * scar + (1-lam) * thermal) / sqrt(lam^2 + (1-lam)^2).

    lam = 1 returns the scar, lam = 0 the thermal state; the two inputs are
    assumed orthonormal (guaranteed by the scar separation).
    """
    if not 0.0 <= lam <= 1.0:
        raise ValueError("lam must lie in [0, 1]")
    amps = lam * scar.amplitudes + (1.0 - lam) * thermal.amplitudes
    return StateVector(scar.basis, amps / np.sqrt(lam**2 + (1.0 - lam) ** 2))


def _popcount_masked(configs: np.ndarray, mask: int, L: int) -> np.ndarray:
    out = np.zeros(len(configs), dtype=np.int64)
    masked = configs & mask
    for b in range(L):
        out += (masked >> b) & 1
    return out


def rotated_amplitudes(basis: ConstrainedBasis, theta: float) -> np.ndarray:
    """Unnormalized projected-rotation amplitudes for every legal config."""
    L = basis.length
    if L % 2:
        raise ValueError("rotated states need even L")
    if not 0.0 <= theta <= np.pi:
        raise ValueError("theta must lie in [0, pi]")
    odd_mask = z2_config(L)                # bits of odd sites
    even_mask = ((1 << L) - 1) ^ odd_mask
    n1_odd = _popcount_masked(basis.configs, odd_mask, L)
    n0_odd = L // 2 - n1_odd
    n1_even = _popcount_masked(basis.configs, even_mask, L)
    k = n0_odd + n1_even
    s, c = np.sin(theta / 2.0), np.cos(theta / 2.0)
    sign = np.where(n0_odd % 2 == 0, 1.0, -1.0)
    return sign * s**k * c ** (L - k)


def rotated_state(basis: ConstrainedBasis, theta: float) -> tuple[StateVector, float]:
    """Normalized projected rotated state and its survival weight <phi|P|phi>."""
    amps = rotated_amplitudes(basis, theta)
    survival = float(np.dot(amps, amps))
    return StateVector(basis, amps / np.sqrt(survival)), survival


def rotated_state_sector(sector: SectorBasis, theta: float) -> StateVector:
    """Rotated state written directly in the (k=0, I=+1) symmetric sector.

    Per representative r the amplitude combines the two sublattice monomials
    amp(r) + amp(Tr), weighted by the orbit size hidden in the sector norms;
    this equals the sector projection of the full-basis rotated state.
    """
    if abs(sector.momentum) > 1e-12 or sector.inversion != 1:
        raise ValueError("the rotated state lives in the (k=0, I=+1) sector")
    parent = sector.parent
    amps = rotated_amplitudes(parent, theta)
    idx_r = parent.indices(sector.representatives)
    idx_tr = parent.indices(_translate_arr(sector.representatives, parent.length))
    w = amps[idx_r] + amps[idx_tr]
    v = w / sector.norms           # proportional to sqrt(orbit size) * w
    v = v / np.linalg.norm(v)
    return StateVector(sector, v)


def expand_sector_state(sector: SectorBasis, state: StateVector | np.ndarray) -> StateVector:
    """Norm-preserving embedding of a sector state into the parent basis."""
    vec = state.amplitudes if isinstance(state, StateVector) else np.asarray(state)
    if vec.shape[0] != sector.dimension:
        raise ValueError("sector dimension mismatch")
    return StateVector(sector.parent, sector.isometry @ vec)
