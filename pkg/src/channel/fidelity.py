"""Minimum gate fidelity over pure two-qubit inputs"""

import logging
from typing import Tuple

import numpy as np
from scipy.optimize import minimize

from ..models.results import FidelityResult
from .kraus import DIM, HV_INDEX, QuantumChannel, basis_state

logger = logging.getLogger(__name__)


def state_fidelity(channel: QuantumChannel, target: np.ndarray, state: np.ndarray) -> float:
    """<psi| U^dagger E(|psi><psi|) U |psi>; lost probability counts as error"""
    state = np.asarray(state, dtype=complex)
    state = state / np.linalg.norm(state)
    rotated = target.conj().T
    return float(sum(abs(np.vdot(state, rotated @ k @ state)) ** 2 for k in channel.kraus))


def _unpack(x: np.ndarray) -> np.ndarray:
    state = x[:DIM] + 1j * x[DIM:]
    norm = np.linalg.norm(state)
    return state / norm if norm > 0 else basis_state(0)


def min_gate_fidelity(
    channel: QuantumChannel,
    target: np.ndarray,
    starts: int = 24,
    seed: int = 0,
    max_iterations: int = 500,
) -> FidelityResult:
    """
    Minimize the output fidelity over pure inputs by multi-start L-BFGS-B

    Starts are the four basis states followed by seeded random states. The
    result never exceeds the fidelity at |11>.

    Args:
        channel: Channel under test
        target: Ideal 4x4 unitary
        starts: Total number of starting points (at least the four basis states)
        seed: Seed for the random starting points
        max_iterations: Iteration budget per local search

    Returns:
        FidelityResult with the best value, its state and a convergence flag
    """
    rng = np.random.default_rng(seed)
    rotated = [target.conj().T @ k for k in channel.kraus]

    def objective(x: np.ndarray) -> float:
        state = _unpack(x)
        return float(sum(abs(np.vdot(state, m @ state)) ** 2 for m in rotated))

    initial = [np.concatenate([basis_state(i).real, np.zeros(DIM)]) for i in range(DIM)]
    initial += [rng.normal(size=2 * DIM) for _ in range(max(starts - DIM, 0))]

    best_value = objective(initial[HV_INDEX])
    best_state = basis_state(HV_INDEX)
    best_converged = True
    evaluations = 0
    for x0 in initial:
        result = minimize(objective, x0, method="L-BFGS-B", options={"maxiter": max_iterations})
        evaluations += int(result.nfev)
        if result.fun < best_value:
            best_value = float(result.fun)
            best_state = _unpack(result.x)
            best_converged = bool(result.success) or int(result.nit) < max_iterations

    outcome = FidelityResult(
        fidelity=best_value, state=best_state, converged=best_converged, evaluations=evaluations
    )
    if not best_converged:
        message = f"Fidelity search hit its budget; best value {best_value:.9f} may not be the minimum"
        outcome.warnings.append(message)
        logger.warning(message)
    logger.debug(f"Minimum gate fidelity {best_value:.12f} after {evaluations} evaluations")
    return outcome


def simplex_lattice(steps: int) -> np.ndarray:
    """All population vectors (a, b, c, d) / steps with non-negative integer entries"""
    rows = [
        (a, b, c, steps - a - b - c)
        for a in range(steps + 1)
        for b in range(steps + 1 - a)
        for c in range(steps + 1 - a - b)
    ]
    return np.asarray(rows, dtype=float) / steps


def lattice_fidelity_oracle(
    channel: QuantumChannel,
    target: np.ndarray,
    steps: int = 60,
) -> Tuple[float, np.ndarray]:
    """
    Exhaustive minimum over a lattice on the population simplex

    Exact only for channels whose fidelity depends on basis populations alone
    (diagonal errors, amplitude damping of |11>), where real non-negative
    amplitudes cover every case.
    """
    populations = simplex_lattice(steps)
    states = np.sqrt(populations).astype(complex)
    total = np.zeros(len(states))
    for k in channel.kraus:
        m = target.conj().T @ k
        total += np.abs(np.einsum("ni,ij,nj->n", states.conj(), m, states)) ** 2
    index = int(np.argmin(total))
    return float(total[index]), states[index]


def sampling_fidelity_oracle(
    channel: QuantumChannel,
    target: np.ndarray,
    samples: int = 100_000,
    seed: int = 0,
    batch: int = 10_000,
) -> Tuple[float, np.ndarray]:
    """Smallest fidelity over seeded Haar-random pure inputs, for any channel"""
    rng = np.random.default_rng(seed)
    operators = [target.conj().T @ k for k in channel.kraus]
    best, best_state = np.inf, basis_state(HV_INDEX)
    remaining = samples
    while remaining > 0:
        size = min(batch, remaining)
        states = rng.normal(size=(size, DIM)) + 1j * rng.normal(size=(size, DIM))
        states /= np.linalg.norm(states, axis=1, keepdims=True)
        total = np.zeros(size)
        for m in operators:
            total += np.abs(np.einsum("ni,ij,nj->n", states.conj(), m, states)) ** 2
        index = int(np.argmin(total))
        if total[index] < best:
            best, best_state = float(total[index]), states[index]
        remaining -= size
    logger.debug(f"Sampled {samples} inputs: minimum fidelity {best:.6f}")
    return best, best_state
