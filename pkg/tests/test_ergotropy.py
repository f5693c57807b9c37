import numpy as np
import pytest

from pxp_ergotropy.entanglement import reduced_density
from pxp_ergotropy.ergotropy import (
    ergotropy,
    optimal_unitary,
    passive_energy,
    subsystem_energy,
    subsystem_spectrum,
)
from pxp_ergotropy.hilbert import build_chain_basis, half_chain_geometry
from pxp_ergotropy.operators import subsystem_hamiltonian
from pxp_ergotropy.states import StateVector, z2_state
from oracles import min_pairing_energy


def test_passive_energy_examples():
    energies = np.array([0.0, np.sqrt(2), 2 * np.sqrt(2)])
    assert passive_energy(np.array([1.0, 0.0, 0.0]), energies) == 0.0
    assert passive_energy(np.full(3, 1 / 3), energies) == pytest.approx(energies.mean())
    probs = np.array([0.5, 0.3, 0.2])
    q = passive_energy(probs, energies)
    assert q == pytest.approx(0.7 * np.sqrt(2))
    assert q == pytest.approx(min_pairing_energy(probs, energies))


def test_passive_energy_validation():
    with pytest.raises(ValueError):
        passive_energy(np.array([0.5, 0.3, 0.2]), np.array([0.0, 1.0]))
    with pytest.raises(ValueError):
        passive_energy(np.array([0.2, 0.8]), np.array([0.0, 1.0]))
    with pytest.raises(ValueError):
        passive_energy(np.array([0.8, 0.2]), np.array([1.0, 0.0]))


def test_passive_energy_is_minimum_over_pairings(rng):
    energies = np.sort(rng.uniform(0, 3, size=5))
    energies -= energies[0]
    probs = np.sort(rng.uniform(0, 1, size=5))[::-1]
    probs /= probs.sum()
    assert passive_energy(probs, energies) == pytest.approx(min_pairing_energy(probs, energies))


def test_degeneracy_invariance():
    energies = np.array([0.0, 1.0, 1.0, 2.0])
    p = np.array([0.4, 0.3, 0.2, 0.1])
    q1 = passive_energy(p, energies)
    swapped = p.copy()
    swapped[1], swapped[2] = p[2], p[1]
    assert q1 == passive_energy(np.sort(swapped)[::-1], energies)


def test_subsystem_energy_examples(rng):
    # ground state of H_A as a product with a compatible complement: E = 0
    L = 8
    basis = build_chain_basis(L, "periodic")
    geometry = half_chain_geometry(L)
    energies, vecs, e_gs = subsystem_spectrum(4)
    region = build_chain_basis(4, "open")
    comp_vac_amp = np.zeros(basis.dimension, dtype=complex)
    for j, cfg in enumerate(region.configs):
        comp_vac_amp[basis.index(int(cfg))] = vecs[j, 0]   # complement empty
    st = StateVector(basis, comp_vac_amp)
    assert subsystem_energy(st, geometry) == pytest.approx(0.0, abs=1e-12)
    # Z2 pins a diagonal-free config: E = -E_gs > 0
    z2 = z2_state(basis)
    assert subsystem_energy(z2, geometry) == pytest.approx(-e_gs)
    assert -e_gs > 0


def test_subsystem_energy_linear_in_rho(rng):
    # tr(rho H_A) is linear under density-matrix mixing
    L = 8
    basis = build_chain_basis(L, "periodic")
    geometry = half_chain_geometry(L)
    _, _, e_gs = subsystem_spectrum(4)

    def normalized(v):
        return v / np.linalg.norm(v)

    a = normalized(rng.normal(size=basis.dimension) + 1j * rng.normal(size=basis.dimension))
    b = normalized(rng.normal(size=basis.dimension) + 1j * rng.normal(size=basis.dimension))
    raw_a = subsystem_energy(StateVector(basis, a), geometry) + e_gs
    raw_b = subsystem_energy(StateVector(basis, b), geometry) + e_gs
    rho_a = reduced_density(StateVector(basis, a), geometry).matrix
    rho_b = reduced_density(StateVector(basis, b), geometry).matrix
    Hd = subsystem_hamiltonian(4).toarray()
    mixed = np.trace((0.3 * rho_a + 0.7 * rho_b) @ Hd).real
    assert mixed == pytest.approx(0.3 * raw_a + 0.7 * raw_b, abs=1e-10)


def test_ergotropy_pure_reduced_state():
    basis = build_chain_basis(8, "periodic")
    br = ergotropy(z2_state(basis), half_chain_geometry(8))
    assert br.Q == pytest.approx(0.0, abs=1e-12)
    assert br.W == pytest.approx(br.E)
    assert br.E == pytest.approx(br.W + br.Q)


def test_ergotropy_identity_random(rng):
    basis = build_chain_basis(10, "periodic")
    geometry = half_chain_geometry(10)
    for _ in range(5):
        v = rng.normal(size=basis.dimension) + 1j * rng.normal(size=basis.dimension)
        v /= np.linalg.norm(v)
        br = ergotropy(StateVector(basis, v), geometry)
        assert br.E == pytest.approx(br.W + br.Q, abs=1e-10)
        assert br.W > -1e-10
        assert br.Q > -1e-10


def test_optimal_unitary_properties(rng):
    l = 4
    H_A = subsystem_hamiltonian(l)
    dim = H_A.shape[0]
    # random density matrix
    X = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = X @ X.conj().T
    rho /= np.trace(rho).real
    U = optimal_unitary(rho, H_A)
    assert np.abs(U @ U.conj().T - np.eye(dim)).max() < 1e-10
    energies, _, e_gs = subsystem_spectrum(l)
    passive = U @ rho @ U.conj().T
    q_from_u = np.trace(passive @ H_A.toarray()).real - e_gs
    probs = np.sort(np.linalg.eigvalsh(rho))[::-1]
    assert q_from_u == pytest.approx(passive_energy(probs, energies), abs=1e-9)
    # Monte-Carlo domination: no random unitary extracts more
    from scipy.stats import unitary_group

    rng2 = np.random.default_rng(7)
    Hd = H_A.toarray()
    for _ in range(100):
        V = unitary_group.rvs(dim, random_state=rng2)
        assert np.trace(U @ rho @ U.conj().T @ Hd).real <= np.trace(V @ rho @ V.conj().T @ Hd).real + 1e-9


def test_optimal_unitary_on_passive_state():
    l = 3
    H_A = subsystem_hamiltonian(l)
    energies, vecs, e_gs = subsystem_spectrum(l)
    probs = np.array([0.5, 0.25, 0.15, 0.07, 0.03])
    rho = vecs @ np.diag(probs) @ vecs.conj().T
    U = optimal_unitary(rho, H_A)
    q = np.trace(U @ rho @ U.conj().T @ H_A.toarray()).real - e_gs
    assert q == pytest.approx(passive_energy(probs, energies), abs=1e-10)
