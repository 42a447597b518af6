import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qguess.linalg import (
    apply,
    as_state,
    as_unitary,
    dagger,
    gram,
    haar_unitary,
    inner_product,
    orthonormalize,
    tensor,
)
from qguess.measurements import mub_unitary

S2 = np.sqrt(0.5)

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)
complex_vec = st.integers(1, 6).flatmap(
    lambda n: st.lists(st.tuples(finite, finite), min_size=n, max_size=n)
).map(lambda xs: np.array([complex(a, b) for a, b in xs]))


def test_inner_product_examples():
    assert inner_product([1, 0], [0, 1]) == 0
    assert inner_product([S2, S2], [1, 0]) == pytest.approx(S2)
    v = as_state([0.6, 0.8j])
    assert inner_product(v, v) == pytest.approx(1.0)


def test_inner_product_conjugates_first_slot():
    assert inner_product([1j, 0], [1, 0]) == pytest.approx(-1j)


def test_inner_product_dimension_mismatch():
    with pytest.raises(ValueError):
        inner_product([1, 0], [1, 0, 0])


@given(complex_vec, st.data())
def test_inner_product_hermitian_symmetry(u, data):
    v = np.array(data.draw(st.lists(st.tuples(finite, finite), min_size=u.size, max_size=u.size)))
    v = v[:, 0] + 1j * v[:, 1]
    assert inner_product(u, v) == pytest.approx(np.conj(inner_product(v, u)), abs=1e-9)


def test_tensor_examples():
    np.testing.assert_allclose(tensor([1, 0], [0, 1]), [0, 1, 0, 0])
    np.testing.assert_allclose(tensor([S2, S2], [S2, -S2]), np.array([1, -1, 1, -1]) / 2)


def test_tensor_is_control_major():
    u, v = np.array([1, 2]), np.array([3, 5, 7])
    t = tensor(u, v)
    for i in range(2):
        for k in range(3):
            assert t[i * 3 + k] == u[i] * v[k]


@given(complex_vec, complex_vec)
def test_tensor_norm_multiplies(u, v):
    assert np.linalg.norm(tensor(u, v)) == pytest.approx(np.linalg.norm(u) * np.linalg.norm(v), rel=1e-9, abs=1e-12)


def test_as_state_rejects_nonfinite_and_unnormalized():
    with pytest.raises(ValueError):
        as_state([np.nan, 1])
    with pytest.raises(ValueError):
        as_state([1, 1], normalized=True)
    with pytest.raises(ValueError):
        as_state([])


def test_as_unitary_rejects_non_unitary():
    with pytest.raises(ValueError):
        as_unitary([[1, 1], [0, 1]])
    with pytest.raises(ValueError):
        as_unitary([[1, 0, 0], [0, 1, 0]])


def test_apply_examples():
    v = np.array([0.6, 0.8j])
    np.testing.assert_allclose(apply(np.eye(2), v), v)
    # U_0^dagger of the qutrit MUB family maps |0> to the uniform vector
    out = apply(dagger(mub_unitary(3, 0)), [1, 0, 0])
    np.testing.assert_allclose(out, np.ones(3) / np.sqrt(3), atol=1e-12)
    with pytest.raises(ValueError):
        apply(np.eye(3), v)


@pytest.mark.parametrize("d", [2, 3, 5, 8])
def test_apply_preserves_norm(d, rng):
    U = haar_unitary(d, rng)
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    assert np.linalg.norm(apply(U, v)) == pytest.approx(np.linalg.norm(v), abs=1e-10)


def test_dagger_examples(rng):
    np.testing.assert_array_equal(dagger(np.eye(3)), np.eye(3))
    U = haar_unitary(4, rng)
    np.testing.assert_array_equal(dagger(dagger(U)), U)
    assert np.max(np.abs(dagger(U) @ U - np.eye(4))) <= 1e-10


def test_gram_examples(rng):
    np.testing.assert_allclose(gram(np.eye(3)), np.eye(3))
    v = np.array([0.6, 0.8j])
    np.testing.assert_allclose(gram([v, v]), np.ones((2, 2)), atol=1e-15)
    vs = rng.standard_normal((4, 3)) + 1j * rng.standard_normal((4, 3))
    g = gram(vs)
    np.testing.assert_allclose(g, g.conj().T, atol=1e-12)
    assert np.all(np.diag(g).real >= 0)
    assert g[1, 2] == pytest.approx(inner_product(vs[1], vs[2]))


def test_gram_dimension_mismatch():
    with pytest.raises(ValueError):
        gram([np.ones(2), np.ones(3)])


def test_orthonormalize_examples():
    (v,) = orthonormalize([[2, 0]])
    np.testing.assert_allclose(v, [1, 0])
    out = orthonormalize([[1, 0], [1, 1]])
    np.testing.assert_allclose(np.array(out), np.eye(2), atol=1e-15)
    out = orthonormalize([[1, 0], [1e-15, 0]], tol=1e-9)
    assert len(out) == 1
    assert orthonormalize([]) == []


@settings(max_examples=50)
@given(st.integers(1, 5), st.integers(1, 7), st.integers(0, 2**32 - 1))
def test_orthonormalize_gram_identity_and_idempotent(d, n, seed):
    r = np.random.default_rng(seed)
    vs = r.standard_normal((n, d)) + 1j * r.standard_normal((n, d))
    out = orthonormalize(vs)
    assert len(out) == min(n, d)
    assert np.max(np.abs(gram(out) - np.eye(len(out)))) <= 1e-10
    again = orthonormalize(out)
    assert np.max(np.abs(np.array(again) - np.array(out))) <= 1e-12


def test_haar_unitary_phase_fix_and_determinism():
    U = haar_unitary(4, np.random.default_rng(7))
    V = haar_unitary(4, np.random.default_rng(7))
    np.testing.assert_array_equal(U, V)
    assert np.max(np.abs(U.conj().T @ U - np.eye(4))) <= 1e-10
    for k in range(4):
        assert abs(U[0, k].imag) < 1e-15 and U[0, k].real > 0
