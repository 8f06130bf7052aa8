"""Small dense linear algebra for qubit states and two-qubit Choi matrices.

States are plain ``(2, 2)`` complex arrays and Choi matrices ``(4, 4)``
complex arrays; the helpers here validate them and compute the few spectral
quantities the rest of the package needs.
"""
import numpy as np

from .config import TOL
from .errors import InvalidState, NotHermitian

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (I2, SX, SY, SZ)

# Sylvester-Hadamard matrix linking Kraus weights and Pauli-map eigenvalues.
HADAMARD = np.array([[1, 1, 1, 1],
                     [1, 1, -1, -1],
                     [1, -1, 1, -1],
                     [1, -1, -1, 1]], dtype=float)


def validate_state(rho, tol=TOL.state):
    """Return ``rho`` as a complex array, raising InvalidState if it is not a density matrix."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (2, 2) or not np.all(np.isfinite(rho)):
        raise InvalidState(f"expected a finite 2x2 matrix, got shape {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > tol:
        raise InvalidState("state is not Hermitian")
    if abs(np.trace(rho) - 1) > tol:
        raise InvalidState(f"trace {np.trace(rho).real!r} != 1")
    if np.linalg.eigvalsh(rho)[0] < -tol:
        raise InvalidState("state has a negative eigenvalue")
    return rho


def state_from_bloch(r):
    r = np.asarray(r, dtype=float)
    if r.shape != (3,):
        raise InvalidState("Bloch vector must have three components")
    if np.linalg.norm(r) > 1 + TOL.state:
        raise InvalidState(f"Bloch vector norm {np.linalg.norm(r)!r} exceeds 1")
    return 0.5 * (I2 + r[0] * SX + r[1] * SY + r[2] * SZ)


def bloch_vector(rho):
    rho = np.asarray(rho, dtype=complex)
    return np.array([np.trace(rho @ s).real for s in PAULIS[1:]])


def ket_state(index):
    """Computational basis projector |index><index|."""
    rho = np.zeros((2, 2), dtype=complex)
    rho[index, index] = 1
    return rho


def trace_norm(m):
    """Sum of singular values of ``m``."""
    m = np.asarray(m, dtype=complex)
    if not np.all(np.isfinite(m)):
        raise ValueError("trace_norm of a non-finite matrix")
    return float(np.sum(np.linalg.svd(m, compute_uv=False)))


def trace_distance(a, b):
    a = validate_state(a)
    b = validate_state(b)
    return 0.5 * trace_norm(a - b)


def hermitian_eigenvalues(m, tol=TOL.equality):
    """Real spectrum of a Hermitian matrix, in descending order."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NotHermitian(f"not a square matrix: shape {m.shape}")
    if np.max(np.abs(m - m.conj().T)) > tol:
        raise NotHermitian("matrix is not Hermitian")
    return np.linalg.eigvalsh(0.5 * (m + m.conj().T))[::-1]


def apply_pauli_map(nu, m):
    """Apply the Pauli map with eigenvalues ``nu`` to an arbitrary 2x2 matrix.

    The map fixes the identity component and rescales the sigma_j component by
    ``nu[j-1]``; it is linear, so ``m`` need not be a state.
    """
    m = np.asarray(m, dtype=complex)
    out = 0.5 * np.trace(m) * I2
    for v, s in zip(nu, PAULIS[1:]):
        out = out + 0.5 * v * np.trace(s @ m) * s
    return out


def choi_from_map_eigenvalues(nu):
    """Choi matrix ``(E x id)[|00>+|11>)(<00|+<11|]`` of the Pauli map ``nu``.

    Assembled entry by entry from the action of the map on the matrix units,
    so the result does not rely on the Kraus decomposition.
    """
    nu = np.asarray(nu, dtype=float)
    choi = np.zeros((4, 4), dtype=complex)
    for a in range(2):
        for b in range(2):
            unit = np.zeros((2, 2), dtype=complex)
            unit[a, b] = 1
            choi += np.kron(apply_pauli_map(nu, unit), unit)
    return choi


def pauli_choi_spectrum(nu):
    """Choi eigenvalues ``2*kappa_j`` of a Pauli map, ordered by j = 0..3."""
    nu = np.asarray(nu, dtype=float)
    return 0.5 * HADAMARD @ np.concatenate(([1.0], nu))
