import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from pxp_ergotropy import (
    build_chain_basis,
    dense_eigh,
    fsa_basis,
    pxp_hamiltonian,
    separate_scar,
    zero_energy_shell,
)


@pytest.fixture(scope="session")
def split_cache():
    """Scar/thermal separations keyed by L, shared across test modules."""
    cache = {}

    def get(L):
        if L not in cache:
            basis = build_chain_basis(L, "periodic")
            dec = dense_eigh(pxp_hamiltonian(basis))
            shell = zero_energy_shell(dec)
            split = separate_scar(dec.eigenvectors[:, shell], fsa_basis(L))
            cache[L] = (basis, dec, split)
        return cache[L]

    return get


@pytest.fixture()
def rng():
    return np.random.default_rng(42)
