"""Closed-form transfer-matrix results for the rotated reset states.

The projected rotated state is a bond-dimension-2 tensor network, so its
correlation length, energy density, and entanglement spectra have closed
forms.  This script tabulates them against exact diagonalization.
"""

import numpy as np

from pxp_ergotropy import build_chain_basis, pxp_hamiltonian, rotated_state, transfer_analytics

L = 16
basis = build_chain_basis(L, "periodic")
H = pxp_hamiltonian(basis)

print(f"angle sweep at L = {L}")
print("theta     xi        h        E/L analytic   E/L numeric    |diff|")
for theta in np.linspace(0.0, np.pi / 2, 9):
    ana = transfer_analytics(theta, L)
    state, _ = rotated_state(basis, theta)
    numeric = float(np.vdot(state.amplitudes, H @ state.amplitudes).real) / L
    print(
        f"{theta:5.3f}  {ana.xi:8.4f}  {ana.h:8.5f}  {ana.energy_density:+12.8f}"
        f"  {numeric:+12.8f}  {abs(ana.energy_density - numeric):9.1e}"
    )

ta = transfer_analytics(np.pi / 2)
print("\ntwo-cut entanglement spectrum at theta = pi/2 (half chain of a ring):")
print("  analytic:", np.round(np.sort(ta.two_cut)[::-1], 6))
from pxp_ergotropy import entanglement_spectrum, half_chain_geometry

state, _ = rotated_state(basis, np.pi / 2)
spec = entanglement_spectrum(state, half_chain_geometry(L))
print(f"  numeric (L={L}):", np.round(spec[:4], 6))
print("  (finite-size corrections shrink with the fourth root of the cell ratio)")

bound = 2 / (15 + 5 * np.sqrt(5))
print(f"\nh(pi/2) = {ta.h:.8f} saturates its bound 2/(15+5*sqrt(5)) = {bound:.8f}")
