"""V-system scattering of one and two photons"""

from .kernel import Polarization, PropagatorKernel, single_photon_phase
from .two_photon import GatedPair, TwoPhotonAmplitude, scatter_two_photon
from .single_photon import apply_single_scattering, apply_linear_removal, verify_time_reversal
from .time_domain import scatter_two_photon_timedomain, coincidence_ratio

__all__ = [
    'Polarization',
    'PropagatorKernel',
    'single_photon_phase',
    'GatedPair',
    'TwoPhotonAmplitude',
    'scatter_two_photon',
    'apply_single_scattering',
    'apply_linear_removal',
    'verify_time_reversal',
    'scatter_two_photon_timedomain',
    'coincidence_ratio',
]
