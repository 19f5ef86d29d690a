"""Logical two-qubit layer: Kraus channels, minimum fidelity, cascades and the scaling optimizer"""

from .kraus import (
    QuantumChannel,
    TwoQubitDensity,
    apply_channel,
    basis_state,
    cascadable_channel,
    compose,
    primitive_channel,
    u_phase,
    unitary_channel,
)
from .fidelity import lattice_fidelity_oracle, min_gate_fidelity, sampling_fidelity_oracle, state_fidelity
from .cascade import (
    cascade_channel,
    cascade_field,
    cascade_fidelity_far_detuned,
    feedback_onset,
    feedback_revival_period,
    fit_growth_exponent,
    n_for_fidelity,
    optimal_ratio,
    optimize_cascade,
    scaling_generalized,
)

__all__ = [
    'QuantumChannel',
    'TwoQubitDensity',
    'apply_channel',
    'basis_state',
    'cascadable_channel',
    'compose',
    'primitive_channel',
    'u_phase',
    'unitary_channel',
    'lattice_fidelity_oracle',
    'min_gate_fidelity',
    'sampling_fidelity_oracle',
    'state_fidelity',
    'cascade_channel',
    'cascade_field',
    'cascade_fidelity_far_detuned',
    'feedback_onset',
    'feedback_revival_period',
    'fit_growth_exponent',
    'n_for_fidelity',
    'optimal_ratio',
    'optimize_cascade',
    'scaling_generalized',
]
