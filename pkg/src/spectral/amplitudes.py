"""Single-photon spectral amplitudes: closed-form pole modes and grid samples"""

import logging
from dataclasses import dataclass, replace
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..exceptions import GridMismatchError, InvalidParameterError
from .quadrature import KGrid, build_feature_grid

logger = logging.getLogger(__name__)

_COINCIDENCE = 1e-12


@dataclass(frozen=True)
class PoleMode:
    """psi(k) = amplitude / (k - pole), a one-sided exponential in real space"""

    amplitude: complex
    pole: complex

    def __post_init__(self):
        if complex(self.pole).imag == 0.0:
            raise InvalidParameterError("A pole mode needs a pole off the real axis")

    @property
    def carrier(self) -> float:
        return complex(self.pole).real

    @property
    def width(self) -> float:
        return 2.0 * abs(complex(self.pole).imag)

    @property
    def is_rising(self) -> bool:
        """Lower-half-plane pole: supported on z <= 0"""
        return complex(self.pole).imag < 0

    def evaluate(self, k):
        return self.amplitude / (np.asarray(k) - self.pole)

    def norm_squared(self) -> float:
        return abs(self.amplitude) ** 2 / self.width

    def inverted(self, center: float) -> "PoleMode":
        return PoleMode(-self.amplitude, 2.0 * center - self.pole)

    def conjugated(self) -> "PoleMode":
        """The mode whose values on the real axis are the complex conjugates of these"""
        return PoleMode(np.conj(self.amplitude), np.conj(self.pole))

    def scaled(self, factor: complex) -> "PoleMode":
        return PoleMode(self.amplitude * factor, self.pole)

    def real_space(self, z):
        """psi(z) for the transform psi(k) = int dz psi(z) exp(-ikz)"""
        z = np.asarray(z, dtype=float)
        if self.is_rising:
            support = z <= 0
            coefficient = -1j * self.amplitude
        else:
            support = z >= 0
            coefficient = 1j * self.amplitude
        exponent = np.where(support, 1j * self.pole * z, 0.0)
        return np.where(support, coefficient * np.exp(exponent), 0.0)


@dataclass(frozen=True)
class PhaseFactor:
    """Unit-modulus factor (k - c - iw/2)/(k - c + iw/2), or its conjugate"""

    center: float
    width: float
    conjugate: bool = False

    def __post_init__(self):
        if not self.width > 0:
            raise InvalidParameterError(f"Phase factor width must be positive, got {self.width}")

    @property
    def zero(self) -> complex:
        sign = -1.0 if self.conjugate else 1.0
        return complex(self.center, sign * 0.5 * self.width)

    @property
    def pole(self) -> complex:
        sign = 1.0 if self.conjugate else -1.0
        return complex(self.center, sign * 0.5 * self.width)

    def evaluate(self, k):
        k = np.asarray(k)
        return (k - self.zero) / (k - self.pole)

    def adjoint(self) -> "PhaseFactor":
        return PhaseFactor(self.center, self.width, not self.conjugate)

    def inverted(self, about: float) -> "PhaseFactor":
        return PhaseFactor(2.0 * about - self.center, self.width, not self.conjugate)


@dataclass(frozen=True, eq=False)
class SpectralAmplitude:
    """
    A single-photon wavepacket over wavenumber

    Either a closed form (a pole mode times unit-modulus phase factors) or
    complex samples on a KGrid. Norms use the measure dk/2pi.
    """

    mode: Optional[PoleMode] = None
    phases: Tuple[PhaseFactor, ...] = ()
    grid: Optional[KGrid] = None
    values: Optional[np.ndarray] = None

    def __post_init__(self):
        closed = self.mode is not None
        sampled = self.grid is not None or self.values is not None
        if closed == sampled:
            raise InvalidParameterError("An amplitude is either a closed form or grid samples")
        if sampled:
            if self.grid is None or self.values is None or self.values.shape != self.grid.nodes.shape:
                raise InvalidParameterError("Grid samples need a grid and one value per node")

    @property
    def is_closed_form(self) -> bool:
        return self.mode is not None

    @property
    def is_pure_mode(self) -> bool:
        return self.mode is not None and not self.phases

    def evaluate(self, k):
        if not self.is_closed_form:
            raise InvalidParameterError("Only closed forms can be evaluated off-grid")
        value = self.mode.evaluate(k)
        for factor in self.phases:
            value = value * factor.evaluate(k)
        return value

    def values_on(self, grid: KGrid) -> np.ndarray:
        if self.is_closed_form:
            return self.evaluate(grid.nodes)
        if not self.grid.matches(grid):
            raise GridMismatchError("Amplitude is sampled on a different grid")
        return self.values

    def sample(self, grid: KGrid, normalize: bool = False) -> "SpectralAmplitude":
        """Grid samples of this amplitude; optionally rescaled to unit discrete norm"""
        values = np.asarray(self.values_on(grid), dtype=complex)
        if normalize:
            norm_sq = float(np.sum(grid.measure * np.abs(values) ** 2))
            values = values / np.sqrt(norm_sq)
        return SpectralAmplitude(grid=grid, values=values)

    def norm_squared(self) -> float:
        if self.is_closed_form:
            return self.mode.norm_squared()
        return float(np.sum(self.grid.measure * np.abs(self.values) ** 2))

    def norm(self) -> float:
        return float(np.sqrt(self.norm_squared()))

    def scaled(self, factor: complex) -> "SpectralAmplitude":
        if self.is_closed_form:
            return replace(self, mode=self.mode.scaled(factor))
        return replace(self, values=self.values * factor)

    def normalized(self) -> "SpectralAmplitude":
        return self.scaled(1.0 / self.norm())

    def with_phase(self, factor: PhaseFactor) -> "SpectralAmplitude":
        """Multiply by a phase factor; closed forms cancel a factor against its adjoint"""
        if not self.is_closed_form:
            return replace(self, values=self.values * factor.evaluate(self.grid.nodes))
        phases = list(self.phases)
        adjoint = factor.adjoint()
        if adjoint in phases:
            phases.remove(adjoint)
        else:
            phases.append(factor)
        return replace(self, phases=tuple(phases))

    def real_space(self, z):
        """Position-space amplitude; grid samples are transformed by quadrature"""
        z = np.asarray(z, dtype=float)
        if self.is_pure_mode:
            return self.mode.real_space(z)
        if self.is_closed_form:
            raise InvalidParameterError("Real-space form is only available for pure modes and grid samples")
        kernel = np.exp(1j * np.multiply.outer(z, self.grid.nodes))
        return kernel @ (self.grid.measure * self.values)


def make_exponential_mode(k0: float, gamma: float) -> SpectralAmplitude:
    """
    The principal mode: a rising exponential with center wavenumber k0

    psi(k) = i sqrt(gamma) / (k - k0 + i gamma/2), unit norm for any (k0, gamma).
    """
    if not gamma > 0:
        raise InvalidParameterError(f"Mode bandwidth must be positive, got {gamma}")
    return SpectralAmplitude(mode=PoleMode(1j * np.sqrt(gamma), complex(k0, -0.5 * gamma)))


def invert_pulse(psi: SpectralAmplitude, k0: float) -> SpectralAmplitude:
    """Spectral inversion psi'(k) = psi(2 k0 - k)"""
    if psi.is_closed_form:
        return SpectralAmplitude(
            mode=psi.mode.inverted(k0),
            phases=tuple(f.inverted(k0) for f in psi.phases),
        )
    if not psi.grid.is_symmetric_about(k0):
        raise GridMismatchError(f"Grid window is not symmetric about k0={k0}; cannot invert on-grid")
    return SpectralAmplitude(grid=psi.grid, values=psi.values[::-1])


def inner_product(a: SpectralAmplitude, b: SpectralAmplitude) -> complex:
    """<a|b> = int dk/2pi conj(a(k)) b(k)"""
    if a.is_closed_form and b.is_closed_form:
        return _closed_inner_product(a, b)
    if a.is_closed_form:
        grid = b.grid
    else:
        grid = a.grid
        if not b.is_closed_form and not b.grid.matches(grid):
            raise GridMismatchError("Inner product of amplitudes sampled on different grids")
    return complex(grid.integrate(np.conj(a.values_on(grid)) * b.values_on(grid)))


def _closed_inner_product(a: SpectralAmplitude, b: SpectralAmplitude) -> complex:
    conj_mode = a.mode.conjugated()
    constant = conj_mode.amplitude * b.mode.amplitude
    poles = [conj_mode.pole, b.mode.pole]
    zeros: List[complex] = []
    for factor in [f.adjoint() for f in a.phases] + list(b.phases):
        zeros.append(factor.zero)
        poles.append(factor.pole)
    zeros, poles = _cancel(zeros, poles)
    try:
        return rational_line_integral(constant, zeros, poles)
    except ArithmeticError:
        logger.debug("Repeated poles in both half-planes; integrating on a grid")
        features = [(p.real, 2.0 * abs(p.imag)) for p in poles]
        grid = build_feature_grid(features, resolution=1024)
        return complex(grid.integrate(np.conj(a.evaluate(grid.nodes)) * b.evaluate(grid.nodes)))


def _cancel(zeros: Sequence[complex], poles: Sequence[complex]):
    zeros = list(zeros)
    poles = list(poles)
    remaining = []
    for z in zeros:
        match = next((i for i, p in enumerate(poles) if abs(p - z) <= _COINCIDENCE * (1.0 + abs(z))), None)
        if match is None:
            remaining.append(z)
        else:
            poles.pop(match)
    return remaining, poles


def _has_repeats(points: Sequence[complex]) -> bool:
    for i, p in enumerate(points):
        for q in points[i + 1:]:
            if abs(p - q) <= _COINCIDENCE * (1.0 + abs(p)):
                return True
    return False


def rational_line_integral(constant: complex, zeros: Sequence[complex], poles: Sequence[complex]) -> complex:
    """
    int dk/2pi constant * prod(k - z) / prod(k - p) over the real line

    Closes the contour in whichever half-plane has only simple poles. Raises
    ArithmeticError when neither does.
    """
    if len(poles) < len(zeros) + 2:
        raise InvalidParameterError("Integrand must decay at least as 1/k^2")
    if any(p.imag == 0.0 for p in poles):
        raise InvalidParameterError("Integrand has a pole on the real axis")
    poles = [complex(p) for p in poles]
    upper = [i for i, p in enumerate(poles) if p.imag > 0]
    lower = [i for i, p in enumerate(poles) if p.imag < 0]
    if not _has_repeats([poles[i] for i in upper]):
        chosen, sign = upper, 1j
    elif not _has_repeats([poles[i] for i in lower]):
        chosen, sign = lower, -1j
    else:
        raise ArithmeticError("Repeated poles in both half-planes")

    total = 0.0 + 0.0j
    for m in chosen:
        pm = poles[m]
        residue = constant
        for z in zeros:
            residue *= pm - z
        for j, p in enumerate(poles):
            if j != m:
                residue /= pm - p
        total += residue
    return complex(sign * total)
