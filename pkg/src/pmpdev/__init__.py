"""Principal-mode projector hardware model"""

from .cavity_loader import (
    CavityLoader,
    analytic_efficiency,
    emission_trace,
    emit_mode,
    load_efficiency,
    pmp_success_probability,
)

__all__ = [
    'CavityLoader',
    'analytic_efficiency',
    'emission_trace',
    'emit_mode',
    'load_efficiency',
    'pmp_success_probability',
]
