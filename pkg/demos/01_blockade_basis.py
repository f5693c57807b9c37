"""Blockade-constrained configuration spaces and their symmetry sectors.

The nearest-neighbour blockade turns the 2^L spin space into a Fibonacci
(open chain) or Lucas (ring) sized space.  This walk-through enumerates the
small bases, shows the golden-ratio growth, and decomposes a ring into
momentum / inversion sectors.
"""

import numpy as np

from pxp_ergotropy import (
    build_chain_basis,
    build_momentum_sector,
    build_symmetric_sector,
    state_index,
)

print("=== chain bases ===")
for L in range(2, 13, 2):
    ring = build_chain_basis(L, "periodic")
    open_ = build_chain_basis(L, "open")
    print(f"L={L:2d}: ring dim {ring.dimension:5d}   open dim {open_.dimension:5d}")

golden = (1 + np.sqrt(5)) / 2
d12 = build_chain_basis(12, "periodic").dimension
d14 = build_chain_basis(14, "periodic").dimension
print(f"\nring growth d(14)/d(12) = {d14 / d12:.4f}  vs golden ratio^2 = {golden**2:.4f}")

print("\n=== the L=4 ring, written out ===")
basis = build_chain_basis(4, "periodic")
for config in basis.configs:
    sites = "".join(str((int(config) >> b) & 1) for b in range(4))
    print(f"  index {state_index(basis, int(config))}: |{sites}>  (bitmask {int(config):#06b})")

print("\n=== symmetry resolution of the L=8 ring ===")
parent = build_chain_basis(8, "periodic")
total = 0
for m in range(8):
    dim = build_momentum_sector(8, m).dimension
    total += dim
    marker = ""
    if m in (0, 4):
        k = 0.0 if m == 0 else np.pi
        plus = build_symmetric_sector(8, k, 1).dimension
        minus = build_symmetric_sector(8, k, -1).dimension
        marker = f"  -> inversion split {plus} + {minus}"
    print(f"  k = 2*pi*{m}/8: dim {dim}{marker}")
print(f"sectors sum to {total} = parent dim {parent.dimension}")
