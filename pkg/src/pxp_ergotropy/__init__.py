"""Ergotropy and entanglement diagnostics for the blockade-constrained PXP chain.

Library layout:

- hilbert: constrained bases, symmetry sectors, cut bookkeeping
- operators: PXP Hamiltonians, tower generators, observables
- spectra: dense diagonalization and the degenerate zero shell
- scars: forward-scattering tower and scar/thermal separation
- states: Z2, interpolated, and projected rotated states
- entanglement: constrained partial trace, entropies, MI/TMI, QFI density
- ergotropy: passive pairing, bound energy, optimal extraction unitary
- dynamics: eigenbasis and Lanczos time evolution, quench trajectories
- analytics: closed-form transfer-matrix results with numeric cross-checks
- fits: scaling fits and thermodynamic-limit extrapolations
- runner: batch experiments writing CSV outputs (see also the CLI)
"""

__version__ = "0.1.0"

from .hilbert import (
    ConstrainedBasis,
    CutGeometry,
    SectorBasis,
    build_chain_basis,
    build_momentum_sector,
    build_symmetric_sector,
    half_chain_geometry,
    quarter_intervals,
    state_index,
)
from .operators import (
    apply,
    fsa_raising,
    pxp_hamiltonian,
    pxp_sector_hamiltonian,
    staggered_z,
    subsystem_hamiltonian,
)
from .spectra import SpectralDecomposition, dense_eigh, ground_energy, zero_energy_shell
from .scars import FsaTower, ScarSplit, fsa_basis, separate_scar
from .states import (
    StateVector,
    expand_sector_state,
    interpolate,
    rotated_state,
    rotated_state_sector,
    z2_state,
)
from .entanglement import (
    ReducedDensity,
    entanglement_spectrum,
    entropy,
    entropy_of,
    mutual_information,
    qfi_density,
    reduced_density,
    tripartite_mi,
)
from .ergotropy import ErgotropyBreakdown, ergotropy, optimal_unitary, passive_energy, subsystem_energy
from .dynamics import TimeSeries, evolve_eigenbasis, evolve_krylov, quench_series, steady_average
from .analytics import TransferAnalytics, analytic_energy_density, compare_analytic_numeric, transfer_analytics
from .fits import FitResult, extrapolate_ergotropy_density, fit_entropy_scaling, fit_sq_over_q
from .runner import RunConfig
