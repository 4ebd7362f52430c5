"""Dense complex linear algebra for small qubit registers.

Pure states are length-2^n complex vectors, density matrices are
2^n x 2^n arrays. Qubit 0 is the most significant bit of the basis
index, so for n=4 the basis label |1000> is index 8.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

import numpy as np

# Construction-time tolerance; test oracles use a looser 1e-10.
CONSTRUCTION_TOL = 1e-12
ORACLE_TOL = 1e-10

# Dense storage only; 2^12 amplitudes is the intended ceiling.
MAX_QUBITS = 12


def _frozen_array(a, shape, dtype=complex) -> np.ndarray:
    arr = np.array(a, dtype=dtype)
    if arr.shape != shape:
        raise ValueError(f"expected shape {shape}, got {arr.shape}")
    if not np.all(np.isfinite(arr.view(float))):
        raise ValueError("non-finite entries")
    arr.setflags(write=False)
    return arr


def _check_qubit_count(n_qubits: int) -> None:
    if not 1 <= n_qubits <= MAX_QUBITS:
        raise ValueError(f"n_qubits must be in [1, {MAX_QUBITS}], got {n_qubits}")


@dataclass(frozen=True)
class PureState:
    """Normalized state vector over the 2^n computational basis."""

    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        _check_qubit_count(self.n_qubits)
        amps = _frozen_array(self.amplitudes, (2**self.n_qubits,))
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > 1e-9:
            raise ValueError(f"state not normalized: |psi| = {norm}")
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_amplitudes(cls, n_qubits: int, amplitudes) -> "PureState":
        """Build a state, normalizing the given amplitude vector."""
        amps = np.asarray(amplitudes, dtype=complex)
        norm = np.linalg.norm(amps)
        if not np.isfinite(norm) or norm == 0:
            raise ValueError("amplitude vector must be finite and nonzero")
        return cls(n_qubits, amps / norm)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


@dataclass(frozen=True)
class MixedState:
    """Hermitian, unit-trace density matrix over the 2^n basis."""

    n_qubits: int
    matrix: np.ndarray

    def __post_init__(self):
        _check_qubit_count(self.n_qubits)
        dim = 2**self.n_qubits
        rho = _frozen_array(self.matrix, (dim, dim))
        if np.max(np.abs(rho - rho.conj().T)) > CONSTRUCTION_TOL:
            raise ValueError("density matrix not Hermitian")
        tr = np.trace(rho).real
        if abs(tr - 1.0) > 1e-9:
            raise ValueError(f"density matrix trace {tr} != 1")
        object.__setattr__(self, "matrix", rho)

    @classmethod
    def from_pure(cls, state: PureState) -> "MixedState":
        rho = np.outer(state.amplitudes, state.amplitudes.conj())
        return cls(state.n_qubits, rho)

    def diagonal(self) -> np.ndarray:
        return np.real(np.diag(self.matrix))


@dataclass(frozen=True)
class LocalUnitary:
    """A 2x2 unitary applied to a single qubit."""

    entries: np.ndarray

    def __post_init__(self):
        u = _frozen_array(self.entries, (2, 2))
        if np.max(np.abs(u @ u.conj().T - np.eye(2))) > CONSTRUCTION_TOL:
            raise ValueError("matrix is not unitary")
        object.__setattr__(self, "entries", u)


State = Union[PureState, MixedState]


def _check_qubit_index(n_qubits: int, qubit_index: int) -> None:
    if not 0 <= qubit_index < n_qubits:
        raise IndexError(
            f"qubit index {qubit_index} out of range for {n_qubits} qubits"
        )


def apply_local(state: PureState, u: LocalUnitary, qubit_index: int) -> PureState:
    """Apply u to one qubit of a pure state (stride-wise, no Kronecker blowup)."""
    n = state.n_qubits
    _check_qubit_index(n, qubit_index)
    psi = state.amplitudes.reshape([2] * n)
    psi = np.moveaxis(psi, qubit_index, 0).reshape(2, -1)
    out = u.entries @ psi
    out = np.moveaxis(out.reshape([2] * n), 0, qubit_index).reshape(-1)
    return PureState(n, out)


def apply_local_mixed(state: MixedState, u: LocalUnitary, qubit_index: int) -> MixedState:
    """Conjugate a density matrix by a single-qubit unitary: rho -> U rho U†."""
    n = state.n_qubits
    _check_qubit_index(n, qubit_index)
    rho = state.matrix.reshape([2] * (2 * n))
    rho = np.moveaxis(rho, (qubit_index, n + qubit_index), (0, 1)).reshape(2, 2, -1)
    rho = np.einsum("ab,bdx,cd->acx", u.entries, rho, u.entries.conj())
    rho = np.moveaxis(rho.reshape([2] * (2 * n)), (0, 1), (qubit_index, n + qubit_index))
    return MixedState(n, rho.reshape(2**n, 2**n))


def diagonal_expectation(state: State, indices: Iterable[int]) -> float:
    """Tr[rho P] for the diagonal projector onto the given basis indices."""
    idx = np.fromiter(indices, dtype=np.intp)
    dim = 2**state.n_qubits
    if idx.size and (idx.min() < 0 or idx.max() >= dim):
        raise IndexError(f"basis index out of range for dimension {dim}")
    if isinstance(state, PureState):
        value = float(np.sum(state.probabilities()[idx]))
    else:
        value = float(np.sum(state.diagonal()[idx]))
    # clip numerical dust outside [0, 1]
    return min(max(value, 0.0), 1.0)
