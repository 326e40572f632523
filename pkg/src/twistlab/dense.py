"""Dense state-vector reference simulator, capped at 12 qubits.

This is the brute-force oracle the rest of the package is tested against.
It shares no code with the tableau simulator beyond the PauliOperator type.
"""

from __future__ import annotations

import numpy as np

from .errors import CapacityError, ContractViolation
from .pauli import PauliOperator, is_hermitian

MAX_QUBITS = 12

_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
_S = np.diag([1, 1j]).astype(complex)
_GATES_1Q = {
    "H": _H,
    "S": _S,
    "S_DAG": _S.conj().T,
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.diag([1, -1]).astype(complex),
}
_CZ = np.diag([1, 1, 1, -1]).astype(complex)
_CX = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
)


class DenseState:
    """Normalized 2**n state vector with amplitude index bit j = qubit j."""

    def __init__(self, n: int, amplitudes: np.ndarray | None = None):
        if n < 1:
            raise ValueError("need at least one qubit")
        if n > MAX_QUBITS:
            raise CapacityError(f"dense oracle capped at {MAX_QUBITS} qubits, got {n}")
        self.n = n
        if amplitudes is None:
            amplitudes = np.zeros(2**n, dtype=complex)
            amplitudes[0] = 1.0
        self.amplitudes = np.asarray(amplitudes, dtype=complex)

    def copy(self) -> "DenseState":
        return DenseState(self.n, self.amplitudes.copy())

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


def dense_apply_gate(state: DenseState, gate: str, sites: tuple[int, ...]) -> DenseState:
    psi = state.amplitudes.reshape((2,) * state.n)
    if gate in _GATES_1Q:
        (q,) = sites
        ax = state.n - 1 - q  # amplitude bit j = qubit j, axis order is reversed
        psi = np.moveaxis(np.tensordot(_GATES_1Q[gate], psi, axes=([1], [ax])), 0, ax)
    elif gate in ("CZ", "CX"):
        a, b = sites
        u = (_CZ if gate == "CZ" else _CX).reshape(2, 2, 2, 2)
        ax_a, ax_b = state.n - 1 - a, state.n - 1 - b
        psi = np.tensordot(u, psi, axes=([2, 3], [ax_a, ax_b]))
        psi = np.moveaxis(psi, [0, 1], [ax_a, ax_b])
    else:
        raise ValueError(f"unknown gate {gate!r}")
    return DenseState(state.n, psi.reshape(-1))


def dense_apply_pauli(state: DenseState, p: PauliOperator) -> DenseState:
    """Apply P = i^phase * prod X^x Z^z exactly."""
    if p.n != state.n:
        raise CapacityError("operator size does not match state")
    idx = np.arange(2**state.n)
    zpar = _popcount(idx & p.z) & 1
    amp = (1j**p.phase) * ((-1.0) ** zpar) * state.amplitudes
    out = np.empty_like(state.amplitudes)
    out[idx ^ p.x] = amp
    return DenseState(state.n, out)


def dense_apply_rotation(state: DenseState, q: PauliOperator) -> DenseState:
    """exp(i pi/4 Q) = (I + iQ)/sqrt(2) for Hermitian unitary Q."""
    if not is_hermitian(q):
        raise ContractViolation("rotation axis must be a Hermitian Pauli")
    rotated = dense_apply_pauli(state, q)
    return DenseState(state.n, (state.amplitudes + 1j * rotated.amplitudes) / np.sqrt(2))


def dense_expectation(state: DenseState, p: PauliOperator) -> float:
    if not is_hermitian(p):
        raise ContractViolation("expectation requires a Hermitian operator")
    val = np.vdot(state.amplitudes, dense_apply_pauli(state, p).amplitudes)
    if abs(val.imag) > 1e-10:
        raise AssertionError(f"expectation not real: {val}")
    return float(val.real)


def _popcount(arr: np.ndarray) -> np.ndarray:
    out = np.zeros_like(arr)
    work = arr.copy()
    while work.any():
        out += work & 1
        work >>= 1
    return out
