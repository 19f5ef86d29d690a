"""Cascades of gates with and without principal-mode projection, and the bandwidth optimizer"""

import logging
import math
from functools import lru_cache
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from ..exceptions import InvalidParameterError, ResolutionInsufficientError
from ..metrics.asymptotics import bandwidth_factors, closed_form_far_detuned
from ..metrics.overlap import gated_pair, principal_mode
from ..models.gate_params import GateParams
from ..models.results import CascadeTrace, OptimizationResult
from ..scattering.kernel import PropagatorKernel
from ..scattering.single_photon import apply_linear_removal
from ..scattering.two_photon import TwoPhotonAmplitude, scatter_two_photon
from ..spectral.quadrature import build_kgrid

logger = logging.getLogger(__name__)

NORM_DRIFT_TOLERANCE = 1e-3
GRID_NORM_TOLERANCE = 1e-3
MIN_OPTIMIZED_GATES = 10
SCAN_POINTS = 64


def cascade_channel(eps_sq: float, phi_nl: float, n: int) -> float:
    """
    Fidelity of n cascadable gates against the target phase n * phi_nl

    Each gate succeeds with probability 1 - eps_sq and failures count as error,
    so the result does not depend on phi_nl.
    """
    if n < 1:
        raise InvalidParameterError(f"Cascade length must be at least 1, got {n}")
    if not 0.0 <= eps_sq <= 1.0:
        raise InvalidParameterError(f"Error probability must lie in [0, 1], got {eps_sq}")
    return float((1.0 - eps_sq) ** n)


def cascade_fidelity_far_detuned(params: GateParams, n: Optional[int] = None) -> float:
    """
    Far-detuned cascade fidelity

    Without ``n`` the cascade length is pi / phi_NL and the first-order form
    1 - pi (Gamma/delta) h(r) is returned; with ``n`` the product (1 - eps_sq)^n.
    """
    phi_nl, err_sq = closed_form_far_detuned(params)
    if n is not None:
        return cascade_channel(err_sq, phi_nl, n)
    _, h = bandwidth_factors(params.ratio)
    return 1.0 - math.pi * params.gammaH / abs(params.delta) * h


def fit_growth_exponent(n: Sequence[float], infidelity: Sequence[float]) -> float:
    """Least-squares slope of log(1 - F) against log n"""
    n = np.asarray(n, dtype=float)
    infidelity = np.asarray(infidelity, dtype=float)
    usable = (n > 0) & (infidelity > 0)
    if usable.sum() < 2:
        raise InvalidParameterError("Fitting a growth exponent needs two points with positive infidelity")
    slope, _ = np.polyfit(np.log(n[usable]), np.log(infidelity[usable]), 1)
    return float(slope)


def feedback_revival_period(params: GateParams) -> float:
    """
    Gates after which the unprojected bound part comes back in phase

    Each gate multiplies the bound part by mu(K), whose phase at the pair
    carrier K = 2 k0 is theta = 2 atan(Gamma / (2 delta)). The bound parts of n
    gates add to a modulus proportional to |sin(n theta / 2)|, so the error grows
    as n^2 while n theta << 1 and revives after 2 pi / theta gates. The spread of
    K over the pulse pair smears the phase, so the peak comes somewhat before
    pi / theta.
    """
    theta = 2.0 * math.atan2(params.coupling, 2.0 * abs(params.delta))
    return 2.0 * math.pi / theta


def feedback_onset(params: GateParams) -> int:
    """Last gate count with n theta <= 1, where unprojected infidelity is still quadratic"""
    return max(2, int(feedback_revival_period(params) / (2.0 * math.pi)))


def _fit_trace(trace: CascadeTrace, fit_range: Tuple[int, int]):
    low, high = fit_range
    steps = np.asarray(trace.steps)
    window = (steps >= low) & (steps <= high)
    if window.sum() >= 2:
        trace.fit_exponent = fit_growth_exponent(steps[window], trace.infidelity[window])


def cascade_field(
    params: GateParams,
    steps: int = 20,
    pmp: bool = True,
    resolution: int = 512,
    cutoff: float = 40.0,
    method: str = "residue",
    fit_range: Optional[Tuple[int, int]] = None,
) -> CascadeTrace:
    """
    Field-level cascade of primitive gates on the principal product mode

    With projection on, every step is followed by a projection onto psi x psi:
    the step succeeds with |<psi psi|state>|^2 and the state restarts from the
    product. With projection off the pair keeps its bound part from gate to
    gate. F_n is the cumulative success probability (on) or |<psi psi|state_n>|^2
    against the accumulated phase (off).

    Args:
        params: Gate parameters
        steps: Number of gates
        pmp: Project onto the principal product after each gate
        resolution: Grid resolution for overlaps and quadrature scattering
        cutoff: Grid cutoff
        method: "residue" follows the closed-form pair, "quadrature" evolves
            the sampled state on a grid
        fit_range: Inclusive step range for the growth-exponent fit. Defaults to
            every step from 2 with projection, and to the quadratic onset
            (see ``feedback_onset``) without it

    Returns:
        CascadeTrace with fidelity and success probability per step
    """
    if steps < 1:
        raise InvalidParameterError(f"Cascade length must be at least 1, got {steps}")
    if method not in ("residue", "quadrature"):
        raise InvalidParameterError(f"Unknown cascade method '{method}'")

    trace = CascadeTrace(pmp=pmp)
    logger.info(f"Field cascade: {steps} gates, pmp {'on' if pmp else 'off'}, method {method}")
    if method == "residue":
        _cascade_closed_form(params, steps, pmp, resolution, cutoff, trace)
    else:
        _cascade_on_grid(params, steps, pmp, resolution, cutoff, trace)
    if fit_range is None:
        fit_range = (2, steps) if pmp else (1, min(steps, feedback_onset(params)))
    _fit_trace(trace, fit_range)
    if trace.fit_exponent is not None:
        logger.info(f"Infidelity growth exponent {trace.fit_exponent:.4f}")
    return trace


def _cascade_closed_form(params, steps, pmp, resolution, cutoff, trace):
    if pmp:
        success = abs(gated_pair(params, 1).overlap(resolution=resolution, cutoff=cutoff)) ** 2
        cumulative = 1.0
        for n in range(1, steps + 1):
            cumulative *= success
            trace.append(n, cumulative, success)
        return
    for n in range(1, steps + 1):
        fidelity = abs(gated_pair(params, n).overlap(resolution=resolution, cutoff=cutoff)) ** 2
        if fidelity > 1.0 + NORM_DRIFT_TOLERANCE:
            raise ResolutionInsufficientError(
                f"Cascade fidelity {fidelity:.6f} exceeds 1 after {n} gates; raise the resolution"
            )
        trace.append(n, min(fidelity, 1.0), min(fidelity, 1.0))


def _cascade_on_grid(params, steps, pmp, resolution, cutoff, trace):
    kernel = PropagatorKernel(params)
    psi = principal_mode(params)
    grid = build_kgrid(params, resolution=resolution, cutoff=cutoff)
    start = TwoPhotonAmplitude.product(psi, psi, grid)
    state = start
    cumulative = 1.0
    for n in range(1, steps + 1):
        state = apply_linear_removal(scatter_two_photon(state, kernel, method="quadrature"), kernel)
        norm = state.norm_squared()
        if abs(norm - 1.0) > GRID_NORM_TOLERANCE:
            raise ResolutionInsufficientError(
                f"Grid state norm drifted to {norm:.6f} after {n} gates; raise the resolution or shorten the cascade"
            )
        overlap_sq = abs(state.overlap_with_product(psi, psi)) ** 2
        if pmp:
            cumulative *= overlap_sq
            trace.append(n, cumulative, overlap_sq)
            state = start
        else:
            trace.append(n, overlap_sq, overlap_sq)
        logger.debug(f"Step {n}: norm {norm:.8f}, overlap {overlap_sq:.8f}")


def _objective(r: float) -> float:
    f, h = bandwidth_factors(r)
    return h / (r * f) ** (1.0 / 3.0)


@lru_cache(maxsize=16)
def optimal_ratio(r_min: float = 0.1, r_max: float = 50.0, tolerance: float = 1e-8) -> Tuple[float, float]:
    """
    Bandwidth ratio minimizing h(r) / (r f(r))^(1/3), and the scaling constant

    A geometric scan locates the bracket and a golden-section search refines it.

    Returns:
        (r_opt, C) with 1 - F = C N^(-1/3) at the optimum
    """
    if not 0.0 < r_min < r_max:
        raise InvalidParameterError(f"Invalid ratio range [{r_min}, {r_max}]")
    scan = np.geomspace(r_min, r_max, SCAN_POINTS)
    values = np.array([_objective(r) for r in scan])
    i = int(np.clip(np.argmin(values), 1, SCAN_POINTS - 2))
    result = minimize_scalar(
        _objective, bracket=(scan[i - 1], scan[i], scan[i + 1]), method="golden", tol=tolerance
    )
    r_opt = float(result.x)
    c = math.pi ** (4.0 / 3.0) * float(result.fun)
    logger.debug(f"Optimal ratio {r_opt:.6f}, constant {c:.6f}")
    return r_opt, c


def optimize_cascade(
    n: float,
    r_min: float = 0.1,
    r_max: float = 50.0,
    tolerance: float = 1e-8,
) -> OptimizationResult:
    """
    Best bandwidth ratio and detuning for n far-detuned gates accumulating a pi phase

    With N phi_NL = pi the cascaded error is pi^(4/3) N^(-1/3) h(r) / (r f(r))^(1/3)
    in units of Gamma = 1.
    """
    if n < MIN_OPTIMIZED_GATES:
        raise InvalidParameterError(f"Optimization assumes at least {MIN_OPTIMIZED_GATES} gates, got {n}")
    r_opt, c = optimal_ratio(r_min, r_max, tolerance)
    f, h = bandwidth_factors(r_opt)
    delta_opt = (n * r_opt * f / math.pi) ** (1.0 / 3.0)
    infidelity = c * n ** (-1.0 / 3.0)
    per_gate = h * math.pi / (n * delta_opt)
    fidelity_exact = float(np.exp(n * np.log1p(-per_gate)))
    return OptimizationResult(
        n=float(n), r_opt=r_opt, delta_opt=delta_opt, c=c, infidelity=infidelity, fidelity_exact=fidelity_exact
    )


def n_for_fidelity(target: float) -> float:
    """Cascade length at which the optimized first-order fidelity reaches ``target``"""
    if not 0.0 < target < 1.0:
        raise InvalidParameterError(f"Target fidelity must lie in (0, 1), got {target}")
    _, c = optimal_ratio()
    return (c / (1.0 - target)) ** 3


def scaling_generalized(m: float, n: float, count: float) -> Tuple[float, float]:
    """
    Exponent 1 - n/m and the infidelity order count^(1 - n/m)

    Here the phase per gate scales as detuning^-m and the error per gate as
    detuning^-n. The far-detuned gate has m = 3 and n = 4.
    """
    if m <= 0 or n <= 0:
        raise InvalidParameterError(f"Scaling exponents must be positive, got m={m}, n={n}")
    exponent = 1.0 - n / m
    return exponent, float(count) ** exponent
