"""Separating the zero-energy scar from its degenerate thermal background.

The middle of the PXP spectrum hosts an exactly degenerate E = 0 shell where
one scar state hybridizes with many thermal states.  Projecting the shell
onto the forward-scattering tower and diagonalizing pulls the scar back out:
one eigenvalue near 1, the rest near 0.
"""

import numpy as np

from pxp_ergotropy import (
    build_chain_basis,
    dense_eigh,
    entropy_of,
    fsa_basis,
    half_chain_geometry,
    pxp_hamiltonian,
    separate_scar,
    zero_energy_shell,
)
from pxp_ergotropy.states import z2_config

L = 12
basis = build_chain_basis(L, "periodic")
print(f"diagonalizing the L={L} ring (dim {basis.dimension}) ...")
dec = dense_eigh(pxp_hamiltonian(basis))
shell = zero_energy_shell(dec)
print(f"zero-energy shell dimension: {len(shell)}")

tower = fsa_basis(L)
print(f"forward-scattering tower: {tower.size} states")

split = separate_scar(dec.eigenvectors[:, shell], tower)
print("\ntop tower weights:", np.round(split.fsa_weights[:5], 5))

z2 = basis.index(z2_config(L))
geometry = half_chain_geometry(L)
print("\n         state    |<Z2|v>|^2    S_half")
print(f"  scar          {abs(split.scar.amplitudes[z2])**2:10.5f}  {entropy_of(split.scar, geometry):8.4f}")
for n, thermal in enumerate(split.thermal[:4]):
    ov = abs(thermal.amplitudes[z2]) ** 2
    print(f"  thermal #{n}    {ov:10.5f}  {entropy_of(thermal, geometry):8.4f}")
print(f"  ... ({len(split.thermal)} thermal states total)")

print("\nthe scar keeps a large Neel overlap and low entanglement;")
print("thermal states overlap at the 1e-4 level and sit near the Page value.")
