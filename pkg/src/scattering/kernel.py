"""Single-pole propagator kernel of the V-system atom"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from ..exceptions import InvalidParameterError
from ..models.gate_params import GateParams
from ..spectral.amplitudes import PhaseFactor


class Polarization(Enum):
    """Photon polarization, each coupled to one atomic transition"""
    H = "H"
    V = "V"


def single_photon_phase(k, omega: float, Gamma: float):
    """(k - omega - i Gamma/2) / (k - omega + i Gamma/2), unit modulus on the real axis"""
    if not Gamma > 0:
        raise InvalidParameterError(f"Coupling must be positive, got {Gamma}")
    detuned = np.asarray(k) - omega
    return (detuned - 0.5j * Gamma) / (detuned + 0.5j * Gamma)


@dataclass(frozen=True)
class PropagatorKernel:
    """Resonant denominators and phase factors for both polarizations"""

    params: GateParams

    @property
    def omega(self) -> float:
        return self.params.omega1

    def coupling(self, polarization: Polarization) -> float:
        return self.params.gammaH if polarization is Polarization.H else self.params.gammaV

    def delta_tilde(self, k, polarization: Polarization):
        """k - omega1 + i Gamma/2"""
        return np.asarray(k) - self.omega + 0.5j * self.coupling(polarization)

    def delta_tilde_conj(self, k, polarization: Polarization):
        return np.asarray(k) - self.omega - 0.5j * self.coupling(polarization)

    def phase(self, k, polarization: Polarization):
        return single_photon_phase(k, self.omega, self.coupling(polarization))

    def phase_factor(self, polarization: Polarization) -> PhaseFactor:
        return PhaseFactor(self.omega, self.coupling(polarization))

    def removal_factor(self, polarization: Polarization) -> PhaseFactor:
        return self.phase_factor(polarization).adjoint()
