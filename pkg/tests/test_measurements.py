import cmath
import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qguess.linalg import dagger, gram
from qguess.measurements import (
    MeasurementSet,
    ProjectiveMeasurement,
    QubitMeasurementParams,
    computational_basis,
    is_prime,
    mub_set,
    mub_unitary,
    mub_vector,
    qubit_measurement,
    qubit_params,
)

S2 = np.sqrt(0.5)
W = np.exp(2j * np.pi / 3)
# Alice's operations U_k^dagger for the three qutrit MUBs, entered by hand
QUTRIT_DAGGERS = [
    np.array([[1, 1, 1], [1, W**2, W], [1, W, W**2]]) / np.sqrt(3),
    np.array([[1, W**2, W**2], [1, W, 1], [1, 1, W]]) / np.sqrt(3),
    np.array([[1, W, W], [1, 1, W**2], [1, W**2, 1]]) / np.sqrt(3),
]


def test_qubit_measurement_computational():
    m = qubit_measurement(QubitMeasurementParams(1.0, 0.0, 0.0))
    np.testing.assert_allclose(m.basis, [[1, 0], [0, -1]])


def test_qubit_measurement_hadamard():
    m = qubit_measurement(QubitMeasurementParams(S2, S2, 0.0))
    np.testing.assert_allclose(m.basis, [[S2, S2], [S2, -S2]])


def test_qubit_measurement_second_vector_convention():
    m = qubit_measurement(QubitMeasurementParams(0.6, 0.8, 1.0))
    np.testing.assert_allclose(m.basis[1], [0.8 * np.exp(-1j), -0.6])


@pytest.mark.parametrize("bad", [(-0.1, 1.0, 0), (0.6, 0.6, 0), (0.6, -0.8, 0)])
def test_qubit_params_invariants(bad):
    with pytest.raises(ValueError):
        QubitMeasurementParams(*bad)


angles = st.floats(0, np.pi / 2, allow_nan=False)
phases = st.floats(0, 2 * np.pi, allow_nan=False, exclude_max=True)


@given(angles, phases)
def test_qubit_round_trip(theta, phi):
    p = QubitMeasurementParams(np.cos(theta), np.sin(theta), phi)
    m = qubit_measurement(p)
    assert np.max(np.abs(gram(m.basis) - np.eye(2))) <= 1e-10
    back = qubit_params(m)
    assert back.a == pytest.approx(p.a, abs=1e-12)
    assert back.b == pytest.approx(p.b, abs=1e-12)
    if p.b > 1e-9:
        d = (back.phi - p.phi + np.pi) % (2 * np.pi) - np.pi
        assert abs(d) <= 1e-12
    if p.b == 0:
        assert back.phi == 0.0


def test_projective_measurement_validation():
    with pytest.raises(ValueError):
        ProjectiveMeasurement(np.array([[1, 0], [1, 1]]))
    with pytest.raises(ValueError):
        ProjectiveMeasurement(np.eye(2), labels=(0,))
    m = ProjectiveMeasurement(np.eye(2))
    with pytest.raises(ValueError):
        m.basis[0, 0] = 2


def test_is_prime():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_mub_vector_examples():
    np.testing.assert_allclose(mub_vector(3, 0, 0), np.ones(3) / np.sqrt(3))
    np.testing.assert_allclose(mub_vector(2, 0, 1), [S2, -S2], atol=1e-15)
    with pytest.raises(ValueError):
        mub_vector(4, 0, 0)
    with pytest.raises(ValueError):
        mub_vector(3, 3, 0)


def _overlap_by_hand(d, k, i, l, j):
    """|<M_k,i|M_l,j>|^2 from the defining sum, with cmath only."""
    w = cmath.exp(2j * cmath.pi / d)
    s = sum((w ** (k * n * n + i * n)).conjugate() * w ** (l * n * n + j * n) for n in range(d)) / d
    return abs(s) ** 2


def test_qutrit_unbiasedness_all_pairs():
    pairs = 0
    for k, l in itertools.permutations(range(3), 2):
        for i, j in itertools.product(range(3), repeat=2):
            expected = _overlap_by_hand(3, k, i, l, j)
            assert expected == pytest.approx(1 / 3, abs=1e-12)
            got = abs(np.vdot(mub_vector(3, k, i), mub_vector(3, l, j))) ** 2
            assert got == pytest.approx(expected, abs=1e-12)
            pairs += 1
    assert pairs == 54  # ordered pairs of distinct bases; plus 27 same-basis pairs below
    for k in range(3):
        for i, j in itertools.product(range(3), repeat=2):
            got = abs(np.vdot(mub_vector(3, k, i), mub_vector(3, k, j))) ** 2
            assert got == pytest.approx(float(i == j), abs=1e-12)


@pytest.mark.parametrize("d", [2, 3, 5, 7])
def test_mub_unitaries(d):
    for k in range(d):
        U = mub_unitary(d, k)
        assert np.max(np.abs(U.conj().T @ U - np.eye(d))) <= 1e-10
        for j in range(d):
            np.testing.assert_allclose(U[:, j], mub_vector(d, k, j), atol=1e-14)
    for k, l in itertools.combinations(range(d), 2):
        ov = np.abs(mub_unitary(d, k).conj().T @ mub_unitary(d, l)) ** 2
        assert np.max(np.abs(ov - 1 / d)) <= 1e-10


def test_qutrit_daggers_match_hand_matrices():
    for k in range(3):
        np.testing.assert_allclose(dagger(mub_unitary(3, k)), QUTRIT_DAGGERS[k], atol=1e-12)
    np.testing.assert_allclose(mub_unitary(3, 0) @ [1, 0, 0], np.ones(3) / np.sqrt(3))


def test_measurement_set_validation():
    z = computational_basis(2)
    with pytest.raises(ValueError):
        MeasurementSet((z, computational_basis(3)))
    with pytest.raises(ValueError):
        MeasurementSet((z, z), [0.7, 0.7])
    with pytest.raises(ValueError):
        MeasurementSet((z, z), [1.5, -0.5])
    with pytest.raises(ValueError):
        MeasurementSet(())
    s = MeasurementSet((z, z), [0.25, 0.75], [0.0, 7.0])
    assert s.phases[1] == pytest.approx(7.0 - 2 * np.pi)
    np.testing.assert_allclose(np.abs(s.control_amplitudes) ** 2, [0.25, 0.75])


def test_mub_set_examples():
    s = mub_set(3, 3)
    assert s.num_measurements == 3 and s.dim == 3
    np.testing.assert_allclose(s.weights, np.full(3, 1 / 3))
    for k, m in enumerate(s.measurements):
        np.testing.assert_allclose(m.unitary, mub_unitary(3, k))
    q = mub_set(2, 2)
    ov = np.abs(q.measurements[0].basis.conj() @ q.measurements[1].basis.T) ** 2
    np.testing.assert_allclose(ov, 0.5)
    degenerate = mub_set(3, 3, weights=[1, 0, 0])
    assert degenerate.weights[0] == 1.0
    with pytest.raises(ValueError):
        mub_set(3, 2, weights=[0.5, 0.6])
    with pytest.raises(ValueError):
        mub_set(3, 4)
