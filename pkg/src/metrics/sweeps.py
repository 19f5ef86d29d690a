"""Detuning sweeps of the gate observables"""

import logging

import numpy as np
import pandas as pd

from ..exceptions import InvalidParameterError
from ..models.gate_params import GateParams
from .overlap import gate_metrics

logger = logging.getLogger(__name__)

SWEEP_COLUMNS = [
    "delta", "phi_nl", "err_sq", "fidelity", "purity", "phi_h", "err_h",
    "phi_nl_small_zeta", "err_sq_small_zeta",
]


def sweep_detuning(
    template: GateParams,
    delta_min: float,
    delta_max: float,
    points: int,
    resolution: int = 512,
    cutoff: float = 40.0,
    include_purity: bool = True,
) -> pd.DataFrame:
    """
    Gate metrics on an evenly spaced detuning range

    Args:
        template: Parameters whose atom, bandwidth and couplings are kept
        delta_min: First detuning
        delta_max: Last detuning
        points: Number of rows, at least 2
        resolution: Grid resolution per point
        cutoff: Grid window multiplier
        include_purity: Compute the purity column (one SVD per row)

    Returns:
        DataFrame with one row per detuning, in increasing order
    """
    if points < 2:
        raise InvalidParameterError(f"A sweep needs at least 2 points, got {points}")
    if delta_min > delta_max:
        raise InvalidParameterError("delta_min must not exceed delta_max")

    records = []
    for i, delta in enumerate(np.linspace(delta_min, delta_max, points)):
        metrics = gate_metrics(
            template.with_detuning(float(delta)),
            resolution=resolution,
            cutoff=cutoff,
            include_purity=include_purity,
        )
        records.append(metrics.to_record())
        if (i + 1) % 10 == 0 or i + 1 == points:
            logger.info(f"Sweep progress: {i + 1}/{points} detunings")

    return pd.DataFrame.from_records(records)[SWEEP_COLUMNS]
