import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pauli_nm.errors import InvalidState, NotHermitian
from pauli_nm.qalg import (
    I2, SX, apply_pauli_map, bloch_vector, choi_from_map_eigenvalues, hermitian_eigenvalues,
    ket_state, pauli_choi_spectrum, state_from_bloch, trace_distance, trace_norm, validate_state,
)

from conftest import bloch, eigen


def test_trace_distance_examples():
    rho = state_from_bloch([0.1, -0.3, 0.5])
    assert trace_distance(rho, rho) == pytest.approx(0, abs=1e-15)
    assert trace_distance(ket_state(0), ket_state(1)) == pytest.approx(1)
    # eigenvalue oracle: |0><0| - I/2 = diag(1/2, -1/2)
    assert trace_distance(ket_state(0), I2 / 2) == pytest.approx(0.5, abs=1e-15)


@given(bloch(), bloch())
def test_trace_distance_is_half_bloch_distance(a, b):
    d = trace_distance(state_from_bloch(a), state_from_bloch(b))
    assert d == pytest.approx(0.5 * np.linalg.norm(a - b), abs=1e-10)


def test_trace_norm_examples():
    assert trace_norm(np.eye(2)) == pytest.approx(2)
    assert trace_norm(np.diag([1.0, -1.0])) == pytest.approx(2)
    assert trace_norm(np.diag([3.0, -1.0, 0.0, 0.0])) == pytest.approx(4)


def test_trace_norm_non_normal_matches_sqrt_mhm():
    m = np.array([[0, 2], [0, 0]], dtype=complex)
    w = np.linalg.eigvalsh(m.conj().T @ m)
    assert trace_norm(m) == pytest.approx(np.sum(np.sqrt(np.clip(w, 0, None))))


def test_validate_state_rejects():
    with pytest.raises(InvalidState):
        validate_state(np.eye(2))
    with pytest.raises(InvalidState):
        validate_state(np.array([[1.5, 0], [0, -0.5]]))
    with pytest.raises(InvalidState):
        validate_state(np.array([[0.5, 1], [0, 0.5]]))
    with pytest.raises(InvalidState):
        state_from_bloch([1, 1, 0])


def test_hermitian_eigenvalues():
    assert np.allclose(hermitian_eigenvalues(np.eye(4)), 1)
    assert np.allclose(hermitian_eigenvalues(np.diag([0, 2, 0, 0.0])), [2, 0, 0, 0])
    # sign-pattern oracle (1 +- nu1 +- nu2 +- nu3)/2 with trace 2
    vals = hermitian_eigenvalues(choi_from_map_eigenvalues([0.5, 0.5, 0.5]))
    assert np.allclose(vals, [1.25, 0.25, 0.25, 0.25], atol=1e-12)
    with pytest.raises(NotHermitian):
        hermitian_eigenvalues(np.triu(np.ones((4, 4))))


def test_choi_examples():
    assert np.allclose(hermitian_eigenvalues(choi_from_map_eigenvalues([1, 1, 1])), [2, 0, 0, 0])
    assert np.allclose(hermitian_eigenvalues(choi_from_map_eigenvalues([0, 0, 0])), 0.5)
    # sigma_x conjugation: Choi = |v><v| with v = (sigma_x x 1)(|00> + |11>)
    v = np.kron(SX, np.eye(2)) @ np.array([1, 0, 0, 1], dtype=complex)
    assert np.allclose(choi_from_map_eigenvalues([1, -1, -1]), np.outer(v, v.conj()))


@settings(max_examples=200)
@given(eigen, eigen, eigen)
def test_sign_pattern_matches_explicit_choi(a, b, c):
    explicit = hermitian_eigenvalues(choi_from_map_eigenvalues([a, b, c]))
    formula = np.sort(pauli_choi_spectrum([a, b, c]))[::-1]
    assert np.allclose(explicit, formula, atol=1e-10)
    assert np.trace(choi_from_map_eigenvalues([a, b, c])).real == pytest.approx(2)


@given(bloch(), st.tuples(eigen, eigen, eigen))
def test_apply_pauli_map_scales_bloch(r, nu):
    out = apply_pauli_map(nu, state_from_bloch(r))
    assert np.allclose(bloch_vector(out), np.asarray(nu) * r, atol=1e-12)
    assert np.trace(out).real == pytest.approx(1)
