"""Real-space evaluation of two-photon scattering, used as an independent oracle"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.integrate import cumulative_trapezoid, trapezoid

from ..exceptions import InvalidParameterError, ResolutionInsufficientError
from ..models.gate_params import GateParams
from ..spectral.amplitudes import SpectralAmplitude
from ..spectral.fourier import hat_transform, piecewise_linear_transform
from ..spectral.quadrature import KGrid
from .kernel import Polarization, PropagatorKernel
from .two_photon import TwoPhotonAmplitude

logger = logging.getLogger(__name__)

TAIL_TOLERANCE = 1e-4
MAX_STEP_PHASE = 0.1
MAX_EXPONENT = 700.0


@dataclass
class _Profile:
    """Baseband real-space quantities of one photon on the z window"""

    alpha: complex
    incoming: np.ndarray
    excited: np.ndarray     # exp(alpha z) int_z^0 exp(-alpha y) u(y) dy
    outgoing: np.ndarray    # linearly scattered photon


def _z_window(psi_h: SpectralAmplitude, psi_v: SpectralAmplitude, params: GateParams,
              z_resolution: int, window_decay_lengths: float) -> np.ndarray:
    for psi in (psi_h, psi_v):
        if not (psi.is_pure_mode and psi.mode.is_rising):
            raise InvalidParameterError("The real-space oracle takes products of rising principal modes")
    slowest = min(psi_h.mode.width, psi_v.mode.width, params.gammaH, params.gammaV)
    length = window_decay_lengths / slowest
    if 0.5 * max(params.gammaH, params.gammaV) * length > MAX_EXPONENT:
        raise ResolutionInsufficientError(
            f"Window of {length:.3g} overflows the atomic response; bandwidths too disparate"
        )
    return np.linspace(-length, 0.0, int(z_resolution) + 1)


def _profile(psi: SpectralAmplitude, kernel: PropagatorKernel, polarization: Polarization,
             z: np.ndarray, k_ref: float) -> _Profile:
    Gamma = kernel.coupling(polarization)
    alpha = 1j * (kernel.omega - k_ref) + 0.5 * Gamma
    h = z[1] - z[0]
    if h * max(abs(alpha), psi.mode.width) > MAX_STEP_PHASE:
        raise ResolutionInsufficientError(
            f"z step {h:.3g} too coarse for detuning {kernel.omega - k_ref:.3g}; raise z_resolution"
        )

    incoming = psi.real_space(z) * np.exp(-1j * k_ref * z)
    mass = trapezoid(np.abs(incoming) ** 2, z)
    if abs(psi.norm_squared() - mass) > TAIL_TOLERANCE:
        raise ResolutionInsufficientError(
            f"z window holds mass {mass:.6f} of the pulse; tail exceeds {TAIL_TOLERANCE:.0e}"
        )

    integrand = np.exp(-alpha * z) * incoming
    running = cumulative_trapezoid(integrand, z, initial=0.0)
    excited = np.exp(alpha * z) * (running[-1] - running)
    outgoing = incoming - Gamma * excited
    return _Profile(alpha=alpha, incoming=incoming, excited=excited, outgoing=outgoing)


def scatter_two_photon_timedomain(
    psi_h: SpectralAmplitude,
    psi_v: SpectralAmplitude,
    params: GateParams,
    grid_h: KGrid,
    grid_v: Optional[KGrid] = None,
    z_resolution: int = 16000,
    window_decay_lengths: float = 24.0,
    include_bound_term: bool = True,
    chunk: int = 2048,
) -> TwoPhotonAmplitude:
    """
    Scatter a product of principal modes by direct convolution in real space

    The output is the product of the linearly scattered photons minus the
    term in which both photons were absorbed before either was re-emitted:
    -Gamma_H Gamma_V exp(alpha_H x_H + alpha_V x_V) C_H(m) C_V(m), m = max(x_H, x_V).
    Both parts are transformed onto the wavenumber grids with
    piecewise-linear (Filon) weights.

    Args:
        psi_h, psi_v: Rising principal modes
        params: Gate parameters
        grid_h, grid_v: Output wavenumber grids
        z_resolution: Number of z steps across the window
        window_decay_lengths: Window length in units of the slowest decay length
        include_bound_term: Drop the two-absorption term when False
        chunk: z-chunk size for the separable transform

    Returns:
        TwoPhotonAmplitude on (grid_h, grid_v)
    """
    grid_v = grid_v or grid_h
    kernel = PropagatorKernel(params)
    k_ref = params.k0
    z = _z_window(psi_h, psi_v, params, z_resolution, window_decay_lengths)
    h = z[1] - z[0]

    prof_h = _profile(psi_h, kernel, Polarization.H, z, k_ref)
    prof_v = _profile(psi_v, kernel, Polarization.V, z, k_ref)

    kappa_h = grid_h.nodes - k_ref
    kappa_v = grid_v.nodes - k_ref
    values = np.multiply.outer(
        piecewise_linear_transform(z, prof_h.outgoing, kappa_h),
        piecewise_linear_transform(z, prof_v.outgoing, kappa_v),
    )

    if include_bound_term:
        bound = prof_h.excited * prof_v.excited
        transform = np.zeros(values.shape, dtype=complex)
        for start in range(0, z.size, chunk):
            stop = min(start + chunk, z.size)
            zc = z[start:stop]
            left = np.exp(-1j * np.multiply.outer(kappa_h, zc)) * bound[start:stop]
            right = np.exp(-1j * np.multiply.outer(zc, kappa_v))
            transform += left @ right
        total = np.add.outer(kappa_h, kappa_v)
        transform *= h * hat_transform(total * h)
        lorentz = np.add.outer(1.0 / (prof_h.alpha - 1j * kappa_h), 1.0 / (prof_v.alpha - 1j * kappa_v))
        values = values - params.gammaH * params.gammaV * transform * lorentz

    logger.debug(f"Real-space oracle: {z.size} z points, step {h:.3e}, bound term {include_bound_term}")
    return TwoPhotonAmplitude(grid_h, grid_v, values=values)


def coincidence_ratio(
    psi_h: SpectralAmplitude,
    psi_v: SpectralAmplitude,
    params: GateParams,
    z_resolution: int = 16000,
    window_decay_lengths: float = 24.0,
    include_bound_term: bool = True,
) -> float:
    """
    Coincident-arrival density of the scattered pair relative to independent linear scattering

    int |Phi'(x, x)|^2 dx / int |psi'_H(x) psi'_V(x)|^2 dx. Values below 1 mean
    antibunching; equal to 1 with the two-absorption term dropped.
    """
    kernel = PropagatorKernel(params)
    z = _z_window(psi_h, psi_v, params, z_resolution, window_decay_lengths)
    prof_h = _profile(psi_h, kernel, Polarization.H, z, params.k0)
    prof_v = _profile(psi_v, kernel, Polarization.V, z, params.k0)

    linear = prof_h.outgoing * prof_v.outgoing
    diagonal = linear
    if include_bound_term:
        diagonal = linear - params.gammaH * params.gammaV * prof_h.excited * prof_v.excited
    return float(trapezoid(np.abs(diagonal) ** 2, z) / trapezoid(np.abs(linear) ** 2, z))
