"""Overlap of the gated pair with the unscattered product, gate metrics and purity"""

import cmath
import logging
from typing import Optional, Tuple

import numpy as np
from scipy.linalg import svdvals

from ..exceptions import ResolutionInsufficientError
from ..models.gate_params import GateParams
from ..models.results import GateMetrics
from ..scattering.kernel import Polarization, PropagatorKernel
from ..scattering.single_photon import apply_linear_removal, apply_single_scattering
from ..scattering.two_photon import GatedPair, TwoPhotonAmplitude, scatter_two_photon
from ..spectral.amplitudes import SpectralAmplitude, inner_product, make_exponential_mode
from ..spectral.quadrature import KGrid, build_kgrid
from .asymptotics import require_symmetric_couplings

logger = logging.getLogger(__name__)

SCHMIDT_NORM_TOLERANCE = 1e-3


def principal_mode(params: GateParams) -> SpectralAmplitude:
    return make_exponential_mode(params.k0, params.gamma)


def gated_pair(params: GateParams, gates: int = 1) -> GatedPair:
    """Closed-form pair after ``gates`` primitive gates with linear evolution removed"""
    mode = principal_mode(params).mode
    return GatedPair(PropagatorKernel(params), mode, mode, gates=gates)


def compute_overlap_A(
    params: GateParams,
    grid: Optional[KGrid] = None,
    resolution: Optional[int] = None,
    cutoff: Optional[float] = None,
    tolerance: float = 1e-6,
    check_convergence: bool = True,
) -> complex:
    """
    A = <HV| S_L^dagger S_NL |HV> for the principal product mode

    The double integral collapses onto the total wavenumber; it is evaluated
    at the grid's resolution and again at double resolution.

    Raises:
        ResolutionInsufficientError: If doubling the resolution moves A by more than ``tolerance``
    """
    if resolution is None:
        resolution = grid.resolution if grid is not None and grid.resolution else 512
    if cutoff is None:
        cutoff = grid.cutoff if grid is not None and grid.cutoff else 40.0

    pair = gated_pair(params)
    coarse = pair.overlap(resolution=resolution, cutoff=cutoff)
    if not check_convergence:
        return coarse
    fine = pair.overlap(resolution=2 * resolution, cutoff=cutoff)
    change = abs(fine - coarse)
    logger.debug(f"Overlap at delta={params.delta}: A={fine:.12g}, doubling change {change:.2e}")
    if change > tolerance:
        raise ResolutionInsufficientError(
            f"Overlap not converged at resolution {resolution}: doubling changed it by {change:.2e}"
        )
    return fine


def closed_form_overlap(params: GateParams) -> complex:
    """Residue evaluation of A for equal couplings"""
    require_symmetric_couplings(params)

    def evaluate(delta: float) -> complex:
        gamma = params.gamma
        Gamma = params.gammaH
        sigma = 0.5 * (gamma + Gamma)
        first = 1.0 / ((-2j * gamma) * ((delta - 1j * gamma) ** 2 + sigma ** 2) * (2 * delta - 1j * (gamma + Gamma)))
        second = 1.0 / (((delta + 1j * sigma) ** 2 + gamma ** 2) * (-2j * sigma) * (delta - 1j * (sigma + Gamma)))
        return 1.0 + 4.0 * Gamma ** 2 * gamma ** 2 * (first + second)

    delta = params.delta
    sigma = 0.5 * (params.gamma + params.gammaH)
    singular = abs((delta - 1j * params.gamma) ** 2 + sigma ** 2)
    if singular < 1e-6 * params.gammaH ** 2:
        # Removable singularity where the two residues' poles merge
        eta = 1e-4 * params.gammaH
        return 0.5 * (evaluate(delta + eta) + evaluate(delta - eta))
    return evaluate(delta)


def linear_metrics(params: GateParams, polarization: Polarization) -> Tuple[float, float]:
    """Linear phase and leakage of one photon: arg and 1 - |.|^2 of <psi|S_L psi>"""
    psi = principal_mode(params)
    amplitude = inner_product(psi, apply_single_scattering(psi, PropagatorKernel(params), polarization))
    return cmath.phase(amplitude), max(0.0, 1.0 - abs(amplitude) ** 2)


def gate_output(params: GateParams, grid: KGrid, remove_linear: bool = True) -> TwoPhotonAmplitude:
    """Two-photon output of one primitive gate on the principal product, sampled on ``grid``"""
    kernel = PropagatorKernel(params)
    psi = principal_mode(params)
    phi = TwoPhotonAmplitude.product(psi, psi, grid, kernel=kernel)
    out = scatter_two_photon(phi, kernel)
    return apply_linear_removal(out, kernel) if remove_linear else out


def schmidt_spectrum(phi: TwoPhotonAmplitude) -> np.ndarray:
    """Schmidt coefficients s_i (squares sum to the norm) with quadrature weights folded in"""
    root_h = np.sqrt(phi.grid_h.measure)
    root_v = np.sqrt(phi.grid_v.measure)
    return svdvals(root_h[:, None] * phi.values * root_v[None, :])


def purity(
    params: GateParams,
    resolution: int = 512,
    cutoff: float = 40.0,
    post_removal: bool = True,
) -> float:
    """
    Purity tr(rho_H^2) of the H photon after one gate

    Raises:
        ResolutionInsufficientError: If the Schmidt spectrum misses norm
    """
    grid = build_kgrid(params, resolution=resolution, cutoff=cutoff)
    phi = gate_output(params, grid, remove_linear=post_removal)
    s = schmidt_spectrum(phi)
    norm = float(np.sum(s ** 2))
    if abs(norm - 1.0) > SCHMIDT_NORM_TOLERANCE:
        raise ResolutionInsufficientError(
            f"Schmidt spectrum holds norm {norm:.6f}; grid at resolution {resolution} truncates the state"
        )
    return float(np.sum(s ** 4) / norm ** 2)


def gate_metrics(
    params: GateParams,
    resolution: int = 512,
    cutoff: float = 40.0,
    include_purity: bool = False,
    tolerance: float = 1e-6,
) -> GateMetrics:
    """
    Exact nonlinear phase, error and linear metrics of one primitive gate

    phi_NL = arg A and err_sq = 1 - |A|^2; the small-zeta estimates Re zeta and
    2 Im zeta are carried on the result.
    """
    A = compute_overlap_A(params, resolution=resolution, cutoff=cutoff, tolerance=tolerance)
    phi_h, err_h = linear_metrics(params, Polarization.H)
    phi_v, err_v = linear_metrics(params, Polarization.V)
    p = purity(params, resolution=resolution, cutoff=cutoff) if include_purity else None
    return GateMetrics(delta=params.delta, A=A, phi_h=phi_h, phi_v=phi_v, err_h=err_h, err_v=err_v, purity=p)
