"""Operator-sum layer on the two-qubit logical subspace {|vac>, |H>, |V>, |HV>}"""

import logging
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from ..exceptions import InvalidParameterError, InvalidStateError

logger = logging.getLogger(__name__)

DIM = 4
HV_INDEX = 3
COMPLETENESS_TOLERANCE = 1e-12


def u_phase(phi: float) -> np.ndarray:
    """diag(1, 1, 1, exp(i phi)): the target conditional-phase gate"""
    return np.diag([1.0, 1.0, 1.0, np.exp(1j * phi)]).astype(complex)


def basis_state(index: int) -> np.ndarray:
    state = np.zeros(DIM, dtype=complex)
    state[index] = 1.0
    return state


@dataclass(frozen=True, eq=False)
class TwoQubitDensity:
    """Density matrix in the basis |00>, |01>, |10>, |11>; a trace below 1 is lost probability"""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        object.__setattr__(self, "matrix", m)
        if m.shape != (DIM, DIM):
            raise InvalidStateError(f"Expected a 4x4 density matrix, got shape {m.shape}")
        if not np.allclose(m, m.conj().T, rtol=0.0, atol=1e-12):
            raise InvalidStateError("Density matrix is not Hermitian")
        if np.min(np.linalg.eigvalsh(0.5 * (m + m.conj().T))) < -1e-10:
            raise InvalidStateError("Density matrix is not positive semidefinite")
        if np.trace(m).real > 1.0 + 1e-12:
            raise InvalidStateError(f"Density matrix trace {np.trace(m).real} exceeds 1")

    @classmethod
    def from_state(cls, state: Sequence[complex]) -> "TwoQubitDensity":
        state = np.asarray(state, dtype=complex)
        state = state / np.linalg.norm(state)
        return cls(np.outer(state, state.conj()))

    @classmethod
    def basis(cls, index: int) -> "TwoQubitDensity":
        return cls.from_state(basis_state(index))

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix).real)


@dataclass(frozen=True, eq=False)
class QuantumChannel:
    """Kraus operators, checked for completeness (or sub-completeness) on construction"""

    kraus: Tuple[np.ndarray, ...]
    trace_preserving: bool = True

    def __post_init__(self):
        ops = tuple(np.asarray(k, dtype=complex) for k in self.kraus)
        object.__setattr__(self, "kraus", ops)
        if not ops or any(k.shape != (DIM, DIM) for k in ops):
            raise InvalidParameterError("Kraus operators must be a non-empty list of 4x4 matrices")
        deviation = np.eye(DIM) - self.completeness()
        if self.trace_preserving:
            if np.max(np.abs(deviation)) > COMPLETENESS_TOLERANCE:
                raise InvalidParameterError("Kraus operators do not sum to the identity")
        elif np.min(np.linalg.eigvalsh(deviation)) < -COMPLETENESS_TOLERANCE:
            raise InvalidParameterError("Kraus operators exceed the identity")

    def completeness(self) -> np.ndarray:
        return sum(k.conj().T @ k for k in self.kraus)

    def __call__(self, rho: TwoQubitDensity) -> TwoQubitDensity:
        return apply_channel(self, rho)


def _check_probability(eps_sq: float):
    if not 0.0 <= eps_sq <= 1.0:
        raise InvalidParameterError(f"Error probability must lie in [0, 1], got {eps_sq}")


def unitary_channel(unitary: np.ndarray) -> QuantumChannel:
    return QuantumChannel((unitary,))


def primitive_channel(eps_sq: float, phi: float) -> QuantumChannel:
    """
    Conditional phase followed by amplitude damping of |HV> into |vac>

    E1 = diag(1, 1, 1, sqrt(1 - eps_sq)), E2 = sqrt(eps_sq) |00><11|.
    """
    _check_probability(eps_sq)
    u = u_phase(phi)
    e1 = np.diag([1.0, 1.0, 1.0, np.sqrt(1.0 - eps_sq)]).astype(complex)
    e2 = np.zeros((DIM, DIM), dtype=complex)
    e2[0, HV_INDEX] = np.sqrt(eps_sq)
    return QuantumChannel((u @ e1, u @ e2))


def cascadable_channel(eps_sq: float, phi: float) -> QuantumChannel:
    """Gate followed by a principal-mode projection: the damped branch is removed, not kept"""
    _check_probability(eps_sq)
    e1 = np.diag([1.0, 1.0, 1.0, np.sqrt(1.0 - eps_sq)]).astype(complex)
    return QuantumChannel((u_phase(phi) @ e1,), trace_preserving=False)


def apply_channel(channel: QuantumChannel, rho: TwoQubitDensity) -> TwoQubitDensity:
    """sum_K K rho K^dagger"""
    out = sum(k @ rho.matrix @ k.conj().T for k in channel.kraus)
    return TwoQubitDensity(0.5 * (out + out.conj().T))


def compose(first: QuantumChannel, second: QuantumChannel) -> QuantumChannel:
    """Channel applying ``first`` and then ``second``"""
    return QuantumChannel(
        tuple(b @ a for b in second.kraus for a in first.kraus),
        trace_preserving=first.trace_preserving and second.trace_preserving,
    )
