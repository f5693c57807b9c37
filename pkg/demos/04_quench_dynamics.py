"""Charging a constrained-chain battery by rotated resets.

A global Y rotation by angle theta, projected back into the blockaded space,
prepares the initial state; the chain then evolves under its own Hamiltonian.
theta = 0 (the Neel reset) keeps reviving and retains extractable work;
theta = pi/2 thermalizes fast.  The half-chain energy is conserved exactly,
so all ergotropy dynamics is bound-energy dynamics.
"""

import numpy as np

from pxp_ergotropy import quench_series, steady_average

L = 12
for theta, label in ((0.0, "Neel reset"), (np.pi / 4, "intermediate"), (np.pi / 2, "uniform")):
    series = quench_series(L, theta, t_max=200.0, dt=0.5)
    w, q, s = steady_average(series, (50.0, 200.0))
    conservation = np.abs(series.E_A - series.E_A[0]).max()
    print(f"\n=== theta = {theta:.3f} ({label}), L = {L} ===")
    print(f"  E_A = {series.E_A[0]:.6f} (conserved to {conservation:.1e})")
    print(f"  W(0) = {series.W[0]:.4f} -> steady W = {w:.4f}, steady S = {s:.4f}")
    t_grid = [0, 5, 10, 20, 50, 100]
    idx = [int(t / 0.5) for t in t_grid]
    print("    t:    " + "  ".join(f"{t:6.0f}" for t in t_grid))
    print("    W(t): " + "  ".join(f"{series.W[i]:6.3f}" for i in idx))
    print("    S(t): " + "  ".join(f"{series.S_vN[i]:6.3f}" for i in idx))

print("\nentanglement growth and ergotropy loss mirror each other along every")
print("trajectory; the Neel reset keeps the most work extractable at late times.")
