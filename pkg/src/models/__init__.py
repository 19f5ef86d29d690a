"""Data models shared across the simulator"""

from .gate_params import GateParams
from .results import GateMetrics, FidelityResult, CascadeTrace, OptimizationResult
from .run_config import RunConfig, COMMANDS, FORMATS

__all__ = [
    'GateParams',
    'GateMetrics',
    'FidelityResult',
    'CascadeTrace',
    'OptimizationResult',
    'RunConfig',
    'COMMANDS',
    'FORMATS',
]
