from typing import Callable

import numpy as np
import pytest

import idbench
from idbench import DensityMatrix, IdTable, NoiseParams


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running searches and sweeps")


@pytest.fixture(scope="session")
def cluster3_id() -> IdTable:
    return IdTable(letters=["YXY", "YYZ", "ZXZ", "ZYY"], eigenvalues=[-1, 1, 1, 1], sign=-1)


@pytest.fixture(scope="session")
def ideal_cluster3() -> DensityMatrix:
    return idbench.prepare_cluster(3, NoiseParams.ideal(3))


@pytest.fixture()
def rng() -> np.random.Generator:
    return np.random.default_rng(20211018)


@pytest.fixture()
def random_state(rng: np.random.Generator) -> Callable[[int], DensityMatrix]:
    """Random mixed states of a given number of qubits"""

    def factory(n_qubits: int) -> DensityMatrix:
        dim = 2**n_qubits
        g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        rho = g @ g.conj().T
        return DensityMatrix(rho / np.trace(rho))

    return factory
