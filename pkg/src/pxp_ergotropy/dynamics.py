"""Real-time evolution and ergotropy/entanglement trajectories.

Quenches start from the symmetrized rotated state in the (k=0, I=+1) sector
and evolve under the intrinsic PXP Hamiltonian, either through the dense
sector eigenbasis or with adaptive Lanczos exponential steps.  At every
sample the state is expanded to the parent basis and the half-chain record
{E_A, W, Q, S_vN} is taken; E_A = W + Q holds per sample by construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .entanglement import amplitude_matrix, entropy
from .ergotropy import passive_energy, subsystem_spectrum
from .hilbert import build_symmetric_sector, half_chain_geometry
from .operators import pxp_sector_hamiltonian, subsystem_hamiltonian
from .spectra import SpectralDecomposition, dense_eigh
from .states import StateVector, expand_sector_state, rotated_state_sector

__all__ = [
    "TimeSeries",
    "evolve_eigenbasis",
    "evolve_krylov",
    "quench_series",
    "steady_average",
    "EIGENBASIS_DIM_LIMIT",
]

# dense eigenbasis propagation below this sector dimension, Lanczos above
EIGENBASIS_DIM_LIMIT = 4000


@dataclass
class TimeSeries:
    """Sampled half-chain trajectory of a quench."""

    times: np.ndarray
    E_A: np.ndarray
    W: np.ndarray
    Q: np.ndarray
    S_vN: np.ndarray
    meta: dict = field(default_factory=dict)


def evolve_eigenbasis(dec: SpectralDecomposition, psi0, times) -> np.ndarray:
    """psi(t) = V exp(-i E t) V^dag psi0 for every t; returns (nt, dim) array."""
    vec = psi0.amplitudes if isinstance(psi0, StateVector) else np.asarray(psi0)
    if vec.shape[0] != dec.dimension:
        raise ValueError("state dimension does not match the decomposition")
    coef = dec.eigenvectors.conj().T @ vec
    times = np.asarray(times, dtype=float)
    phases = np.exp(-1j * np.outer(times, dec.eigenvalues))
    return (phases * coef) @ dec.eigenvectors.T


def evolve_krylov(H, psi, dt: float, m: int = 30, tol: float = 1e-12) -> np.ndarray:
    """One step of exp(-i H dt) psi in an adaptively grown Lanczos subspace.

    The Lanczos basis is fully reorthogonalized; the subspace grows until the
    standard last-element residual estimate drops below tol.  Raises if the
    estimate has not converged once the subspace exhausts the full dimension.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    vec = psi.amplitudes if isinstance(psi, StateVector) else np.asarray(psi, dtype=complex)
    dim = vec.shape[0]
    norm0 = np.linalg.norm(vec)
    V = np.zeros((dim, min(m, dim)), dtype=complex)
    V[:, 0] = vec / norm0
    alphas, betas = [], []
    k = 0
    while True:
        w = H @ V[:, k]
        alphas.append(float(np.vdot(V[:, k], w).real))
        w -= alphas[-1] * V[:, k]
        if k > 0:
            w -= betas[-1] * V[:, k - 1]
        w -= V[:, : k + 1] @ (V[:, : k + 1].conj().T @ w)   # full reorthogonalization
        beta = float(np.linalg.norm(w))
        T = np.diag(alphas) + np.diag(betas, 1) + np.diag(betas, -1)
        U = scipy.linalg.expm(-1j * dt * T)
        err = abs(beta * U[-1, 0] * dt) if k + 1 < dim else 0.0
        if err < tol or k + 1 == dim:
            if err >= tol:
                raise RuntimeError(f"Lanczos step did not converge at m = {dim}")
            small = U[:, 0]
            out = norm0 * (V[:, : k + 1] @ small)
            out /= np.linalg.norm(out) / norm0
            if isinstance(psi, StateVector):
                return StateVector(psi.basis, out)
            return out
        if k + 1 == V.shape[1]:
            V = np.concatenate([V, np.zeros((dim, min(V.shape[1], dim - V.shape[1]))), ], axis=1)
        betas.append(beta)
        V[:, k + 1] = w / beta
        k += 1


def _half_chain_record(parent_state: StateVector, geometry, H_A, energies):
    M, _, _ = amplitude_matrix(parent_state, geometry)
    raw = float(np.vdot(M, H_A @ M).real)
    probs = np.linalg.svd(M, compute_uv=False) ** 2
    probs = np.sort(probs)[::-1]
    Q = passive_energy(probs, energies)
    S = entropy(probs)
    return raw, Q, S


def quench_series(
    L: int,
    theta: float,
    t_max: float = 1000.0,
    dt: float = 0.5,
    method: str = "auto",
) -> TimeSeries:
    """Rotated-quench trajectory of {E_A, W, Q, S_vN} for the half chain."""
    if L % 4:
        raise ValueError("quenches need L = 4N to avoid subsystem even-odd effects")
    sector = build_symmetric_sector(L, 0.0, 1)
    H_sec = pxp_sector_hamiltonian(sector)
    psi0 = rotated_state_sector(sector, theta)
    times = np.arange(0.0, t_max + 0.5 * dt, dt)

    if method == "auto":
        method = "eigenbasis" if sector.dimension <= EIGENBASIS_DIM_LIMIT else "krylov"
    if method == "eigenbasis":
        dec = dense_eigh(H_sec)
        trajectory = evolve_eigenbasis(dec, psi0, times)
    elif method == "krylov":
        cur = psi0.amplitudes.astype(complex)
        rows = [cur]
        for _ in range(len(times) - 1):
            cur = evolve_krylov(H_sec, cur, dt)
            rows.append(cur)
        trajectory = np.array(rows)
    else:
        raise ValueError(f"unknown method {method!r}")

    geometry = half_chain_geometry(L)
    l = L // 2
    H_A = subsystem_hamiltonian(l)
    energies, _, e_gs = subsystem_spectrum(l)
    E_A = np.empty(len(times))
    W = np.empty(len(times))
    Q = np.empty(len(times))
    S = np.empty(len(times))
    for i in range(len(times)):
        parent = expand_sector_state(sector, trajectory[i])
        raw, q, s = _half_chain_record(parent, geometry, H_A, energies)
        E_A[i] = raw - e_gs
        Q[i] = q
        W[i] = E_A[i] - q
        S[i] = s
    return TimeSeries(
        times=times, E_A=E_A, W=W, Q=Q, S_vN=S,
        meta={"L": L, "theta": float(theta), "method": method, "dt": dt, "t_max": t_max},
    )


def steady_average(series: TimeSeries, window: tuple[float, float]) -> tuple[float, float, float]:
    """Arithmetic means (W, Q, S_vN) over samples with t1 <= t <= t2."""
    t1, t2 = window
    mask = (series.times >= t1) & (series.times <= t2)
    if not mask.any():
        raise ValueError(f"window {window} contains no samples")
    return (
        float(series.W[mask].mean()),
        float(series.Q[mask].mean()),
        float(series.S_vN[mask].mean()),
    )
