import numpy as np
import pytest

from qguess.measurements import QubitMeasurementParams, qubit_measurement, qubit_set

S2 = np.sqrt(0.5)
Z_PARAMS = (1.0, 0.0, 0.0)
X_PARAMS = (S2, S2, 0.0)


@pytest.fixture
def zx_set():
    return qubit_set([Z_PARAMS, X_PARAMS])


@pytest.fixture
def pi8_probe():
    return np.array([np.cos(np.pi / 8), np.sin(np.pi / 8)], dtype=complex)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_state(rng, d):
    z = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return z / np.linalg.norm(z)


def Z():
    return qubit_measurement(QubitMeasurementParams(*Z_PARAMS))


def X():
    return qubit_measurement(QubitMeasurementParams(*X_PARAMS))
