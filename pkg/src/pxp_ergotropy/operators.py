"""Sparse Hamiltonians and observables on constrained bases.

Operators are plain `scipy.sparse.csr_matrix` objects (real, duplicate-free,
row-ordered); diagonal observables are 1-d numpy arrays of per-config values.
Complex numbers enter only through state vectors.
"""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp

from .hilbert import ConstrainedBasis, SectorBasis, build_chain_basis

__all__ = [
    "pxp_hamiltonian",
    "pxp_sector_hamiltonian",
    "subsystem_hamiltonian",
    "fsa_raising",
    "staggered_z",
    "particle_hole_signs",
    "apply",
    "hermiticity_defect",
]


def _flip_edges(basis: ConstrainedBasis, sites: range, cyclic: bool):
    """Directed (row, col) pairs for every allowed single-site flip."""
    L = basis.length
    configs = basis.configs
    cols_all, rows_all = [], []
    for b in sites:
        ok = np.ones(basis.dimension, dtype=bool)
        if cyclic:
            ok &= (configs >> ((b - 1) % L)) & 1 == 0
            ok &= (configs >> ((b + 1) % L)) & 1 == 0
        else:
            if b > 0:
                ok &= (configs >> (b - 1)) & 1 == 0
            if b < L - 1:
                ok &= (configs >> (b + 1)) & 1 == 0
        flipped = configs[ok] ^ (1 << b)
        cols_all.append(np.flatnonzero(ok))
        rows_all.append(basis.indices(flipped))
    return np.concatenate(rows_all), np.concatenate(cols_all)


def pxp_hamiltonian(basis: ConstrainedBasis) -> sp.csr_matrix:
    """H = sum_i P_{i-1} X_i P_{i+1} on a periodic constrained basis."""
    if basis.boundary != "periodic":
        raise ValueError("pxp_hamiltonian needs a periodic basis")
    if basis.length < 2:
        raise ValueError("pxp_hamiltonian needs L >= 2")
    rows, cols = _flip_edges(basis, range(basis.length), cyclic=True)
    dim = basis.dimension
    return sp.csr_matrix(
        (np.ones(len(rows)), (rows, cols)), shape=(dim, dim)
    )


def pxp_sector_hamiltonian(sector: SectorBasis) -> sp.csr_matrix:
    """PXP Hamiltonian restricted to a symmetry sector via its isometry."""
    H = pxp_hamiltonian(sector.parent)
    S = sector.isometry
    Hs = (S.conj().T @ (H @ S)).tocsr()
    if np.iscomplexobj(Hs.data) and np.abs(Hs.data.imag).max(initial=0.0) < 1e-13:
        Hs = Hs.real.tocsr()
    return Hs


def subsystem_hamiltonian(l: int) -> sp.csr_matrix:
    """Open-chain PXP with bare edge flips, H_A = X1 P2 + sum PXP + P_{l-1} X_l."""
    if l < 2:
        raise ValueError("subsystem needs l >= 2")
    basis = build_chain_basis(l, "open")
    rows, cols = _flip_edges(basis, range(l), cyclic=False)
    dim = basis.dimension
    return sp.csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(dim, dim))


def fsa_raising(basis: ConstrainedBasis) -> tuple[sp.csr_matrix, sp.csr_matrix]:
    """Forward-scattering generators (H+, H-) with H+ + H- = H.

    Sublattices are anchored to |Z2> = |1010...> (1s on odd sites): H+ lowers
    occupied odd sites and raises empty even sites, H- is the transpose.
    """
    if basis.boundary != "periodic" or basis.length % 2:
        raise ValueError("fsa_raising needs a periodic basis with even L")
    L = basis.length
    configs = basis.configs
    rows, cols = [], []
    for b in range(L):
        if b % 2 == 0:
            # odd site (1-indexed): sigma^- on occupied sites, neighbours are
            # automatically empty in a legal config
            ok = (configs >> b) & 1 == 1
        else:
            # even site: sigma^+ needs both cyclic neighbours empty
            ok = (configs >> b) & 1 == 0
            ok &= (configs >> ((b - 1) % L)) & 1 == 0
            ok &= (configs >> ((b + 1) % L)) & 1 == 0
        flipped = configs[ok] ^ (1 << b)
        cols.append(np.flatnonzero(ok))
        rows.append(basis.indices(flipped))
    dim = basis.dimension
    hplus = sp.csr_matrix(
        (np.ones(sum(len(r) for r in rows)), (np.concatenate(rows), np.concatenate(cols))),
        shape=(dim, dim),
    )
    return hplus, hplus.T.tocsr()


def staggered_z(basis: ConstrainedBasis) -> np.ndarray:
    """Diagonal of O = sum_i (-1)^{i+1} Z_i with Z = +1 on empty sites."""
    L = basis.length
    configs = basis.configs
    vals = np.zeros(basis.dimension)
    for b in range(L):
        sign = 1.0 if b % 2 == 0 else -1.0
        vals += sign * (1.0 - 2.0 * ((configs >> b) & 1))
    return vals


def particle_hole_signs(basis: ConstrainedBasis) -> np.ndarray:
    """Diagonal of prod_i Z_i, the particle-hole conjugation C with CHC = -H."""
    counts = np.zeros(basis.dimension, dtype=np.int64)
    for b in range(basis.length):
        counts += (basis.configs >> b) & 1
    return np.where(counts % 2 == 0, 1.0, -1.0)


def apply(op, state):
    """Sparse matrix-vector product; result is not normalized."""
    vec = state.amplitudes if hasattr(state, "amplitudes") else np.asarray(state)
    if op.shape[1] != vec.shape[0]:
        raise ValueError(f"dimension mismatch: {op.shape} @ {vec.shape}")
    out = op @ vec
    if hasattr(state, "amplitudes"):
        return type(state)(state.basis, out)
    return out


def hermiticity_defect(op) -> float:
    """Max-norm of M - M^dagger (0 for exactly Hermitian operators)."""
    diff = (op - op.conj().T).tocoo()
    return float(np.abs(diff.data).max(initial=0.0))
