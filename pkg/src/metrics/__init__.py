"""Gate observables: overlap, nonlinear phase, error, purity and their asymptotics"""

from .overlap import (
    compute_overlap_A,
    closed_form_overlap,
    gate_metrics,
    gate_output,
    gated_pair,
    linear_metrics,
    principal_mode,
    purity,
    schmidt_spectrum,
)
from .asymptotics import bandwidth_factors, closed_form_weak, closed_form_far_detuned
from .sweeps import sweep_detuning, SWEEP_COLUMNS

__all__ = [
    'compute_overlap_A',
    'closed_form_overlap',
    'gate_metrics',
    'gate_output',
    'gated_pair',
    'linear_metrics',
    'principal_mode',
    'purity',
    'schmidt_spectrum',
    'bandwidth_factors',
    'closed_form_weak',
    'closed_form_far_detuned',
    'sweep_detuning',
    'SWEEP_COLUMNS',
]
