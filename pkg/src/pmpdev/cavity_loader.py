"""Cavity model of the principal-mode projector: gated loading and free emission"""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.integrate import trapezoid

from ..exceptions import InvalidParameterError, ResolutionInsufficientError
from ..scattering.two_photon import TwoPhotonAmplitude
from ..spectral.amplitudes import SpectralAmplitude, make_exponential_mode

logger = logging.getLogger(__name__)

TAIL_TOLERANCE = 1e-4
HALVING_TOLERANCE = 1e-6


@dataclass(frozen=True)
class CavityLoader:
    """
    Single-mode cavity behind two irises

    The first iris closes at ``t_close`` and ends loading; the second opens at
    ``t_open`` and starts emission. Switching is instantaneous and the
    coupling is zero while the irises are shut.
    """

    omega_cav: float
    gamma_cav: float
    t_close: float = 0.0
    t_open: float = 0.0
    window_decay_lengths: float = 24.0
    step_factor: float = 0.01

    def __post_init__(self):
        if not np.isfinite(self.omega_cav):
            raise InvalidParameterError(f"Cavity resonance must be finite, got {self.omega_cav}")
        if not self.gamma_cav > 0:
            raise InvalidParameterError(f"Cavity decay rate must be positive, got {self.gamma_cav}")
        if self.t_close > self.t_open:
            raise InvalidParameterError(
                f"Iris schedule needs t_close <= t_open, got {self.t_close} > {self.t_open}"
            )
        if not (self.window_decay_lengths > 0 and self.step_factor > 0):
            raise InvalidParameterError("Window length and step factor must be positive")

    def step_size(self, drive_width: float) -> float:
        return self.step_factor / max(self.gamma_cav, drive_width)


def _drive_width(drive: SpectralAmplitude, loader: CavityLoader) -> float:
    if drive.is_closed_form:
        return drive.mode.width
    return loader.gamma_cav


def _rk4(rate: float, source: np.ndarray, step: float, start: complex = 0.0) -> np.ndarray:
    """
    Fixed-step RK4 for db/dt = -rate b + s(t)

    ``source`` holds s on the half-step grid, so it has 2 n + 1 entries for n steps.
    """
    n = (source.size - 1) // 2
    b = np.empty(n + 1, dtype=complex)
    b[0] = start
    for i in range(n):
        s0, s1, s2 = source[2 * i], source[2 * i + 1], source[2 * i + 2]
        k1 = -rate * b[i] + s0
        k2 = -rate * (b[i] + 0.5 * step * k1) + s1
        k3 = -rate * (b[i] + 0.5 * step * k2) + s1
        k4 = -rate * (b[i] + step * k3) + s2
        b[i + 1] = b[i] + step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return b


def _load(drive: SpectralAmplitude, loader: CavityLoader, step: float, duration: float) -> Tuple[complex, float]:
    n = int(np.ceil(duration / step))
    actual_step = duration / n
    tau = loader.t_close - duration + 0.5 * actual_step * np.arange(2 * n + 1)
    incoming = np.asarray(drive.real_space(-tau), dtype=complex)
    # Rotating frame at the cavity resonance
    source = np.sqrt(loader.gamma_cav) * incoming * np.exp(1j * loader.omega_cav * tau)
    b = _rk4(0.5 * loader.gamma_cav, source, actual_step)
    window_mass = float(trapezoid(np.abs(incoming) ** 2, tau))
    return b[-1], window_mass


def load_efficiency(
    drive: SpectralAmplitude,
    loader: CavityLoader,
    duration: Optional[float] = None,
    check_convergence: bool = True,
) -> float:
    """
    Probability that a single-photon drive ends up in the cavity when the first iris closes

    The drive arrives as v(t) = drive(-t), so a drive built by inverting a
    rising mode meets the cavity as a rising exponential. The amplitude obeys
    db/dt = -(i omega_cav + gamma_cav/2) b + sqrt(gamma_cav) v(t).

    Args:
        drive: Normalized incident wavepacket
        loader: Cavity and iris schedule
        duration: Loading window before t_close; defaults to the configured
            number of decay lengths of the slower of drive and cavity
        check_convergence: Repeat at half the step and compare

    Returns:
        |b(t_close)|^2

    Raises:
        ResolutionInsufficientError: If the drive carries mass outside the
            loading window or halving the step changes the result
    """
    width = _drive_width(drive, loader)
    if duration is None:
        duration = loader.window_decay_lengths / min(width, loader.gamma_cav)
    step = loader.step_size(width)

    amplitude, window_mass = _load(drive, loader, step, duration)
    missing = drive.norm_squared() - window_mass
    if missing > TAIL_TOLERANCE:
        raise ResolutionInsufficientError(
            f"Drive carries mass {missing:.2e} outside the loading window; lengthen it or close the iris later"
        )
    efficiency = abs(amplitude) ** 2
    if check_convergence:
        refined, _ = _load(drive, loader, 0.5 * step, duration)
        change = abs(abs(refined) ** 2 - efficiency)
        if change > HALVING_TOLERANCE:
            raise ResolutionInsufficientError(f"Loading not converged: halving the step changed it by {change:.2e}")
    logger.debug(
        f"Loading at omega_cav={loader.omega_cav}, gamma_cav={loader.gamma_cav}: "
        f"efficiency {efficiency:.8f}, window mass {window_mass:.8f}"
    )
    return float(min(efficiency, 1.0))


def analytic_efficiency(k0: float, gamma: float, omega_cav: float, gamma_cav: float) -> float:
    """Overlap of a rising exponential drive with the cavity's absorption mode"""
    detuning = omega_cav - k0
    return gamma * gamma_cav / ((0.5 * (gamma + gamma_cav)) ** 2 + detuning ** 2)


def emission_trace(loader: CavityLoader, duration: Optional[float] = None) -> Tuple[np.ndarray, np.ndarray]:
    """
    Output field after the second iris opens on a cavity holding one photon

    Returns:
        (times, field) with times measured from ``t_open``
    """
    if duration is None:
        duration = loader.window_decay_lengths / loader.gamma_cav
    step = loader.step_size(loader.gamma_cav)
    n = int(np.ceil(duration / step))
    step = duration / n
    b = _rk4(0.5 * loader.gamma_cav, np.zeros(2 * n + 1, dtype=complex), step, start=1.0)
    times = step * np.arange(n + 1)
    field = np.sqrt(loader.gamma_cav) * b * np.exp(-1j * loader.omega_cav * times)
    return times, field


def emit_mode(loader: CavityLoader) -> SpectralAmplitude:
    """
    Wavepacket released by a charged cavity, fitted from the integrated emission

    The decay rate comes from the slope of log|field| and the carrier from the
    slope of its unwrapped phase over the first few decay lengths.
    """
    times, field = emission_trace(loader)
    fit = times <= 8.0 / loader.gamma_cav
    log_slope, _ = np.polyfit(times[fit], np.log(np.abs(field[fit])), 1)
    phase_slope, _ = np.polyfit(times[fit], np.unwrap(np.angle(field[fit])), 1)
    gamma_fit = -2.0 * float(log_slope)
    omega_fit = -float(phase_slope)
    logger.debug(f"Emitted mode fit: omega={omega_fit:.9f}, gamma={gamma_fit:.9f}")
    return make_exponential_mode(omega_fit, gamma_fit)


def pmp_success_probability(phi: TwoPhotonAmplitude, principal: SpectralAmplitude) -> float:
    """|<psi psi|Phi>|^2: the probability that projection restores the principal product"""
    return float(abs(phi.overlap_with_product(principal, principal)) ** 2)
