"""Test the real-space scattering oracle against the Fourier-space result"""

import pytest

from src.exceptions import InvalidParameterError, ResolutionInsufficientError
from src.models.gate_params import GateParams
from src.scattering.kernel import Polarization, PropagatorKernel
from src.scattering.time_domain import coincidence_ratio, scatter_two_photon_timedomain
from src.scattering.two_photon import TwoPhotonAmplitude, scatter_two_photon
from src.spectral.amplitudes import make_exponential_mode
from src.spectral.quadrature import build_kgrid


def _setup(delta: float):
    params = GateParams.symmetric(gamma=1.0, delta=delta)
    psi = make_exponential_mode(params.k0, params.gamma)
    grid = build_kgrid(params, resolution=256, cutoff=40.0)
    return params, psi, grid


@pytest.mark.slow
class TestOracleAgreement:
    """Test Fourier-space and real-space two-photon scattering coincide"""

    @pytest.mark.parametrize("delta", [0.0, 1.0, 5.0])
    def test_l2_agreement(self, delta):
        """Test the two computations agree in L2"""
        params, psi, grid = _setup(delta)
        kernel = PropagatorKernel(params)
        fourier = scatter_two_photon(TwoPhotonAmplitude.product(psi, psi, grid, kernel=kernel), kernel)
        exact = TwoPhotonAmplitude(grid, grid, values=fourier.values)
        real_space = scatter_two_photon_timedomain(psi, psi, params, grid)
        assert real_space.l2_distance(exact) < 1e-3

    def test_without_bound_term_is_linear(self):
        """Test dropping the two-absorption term leaves the product of linear outputs"""
        params, psi, grid = _setup(1.0)
        kernel = PropagatorKernel(params)
        linear = TwoPhotonAmplitude.product(
            psi.with_phase(kernel.phase_factor(Polarization.H)),
            psi.with_phase(kernel.phase_factor(Polarization.V)),
            grid,
        )
        real_space = scatter_two_photon_timedomain(psi, psi, params, grid, include_bound_term=False)
        assert real_space.l2_distance(linear) < 1e-3


@pytest.mark.slow
class TestCoincidence:
    """Test the coincident-arrival density ratio"""

    def test_resonant_ratio(self, resonant_params):
        """Test the ratio at gamma = Gamma on resonance"""
        psi = make_exponential_mode(resonant_params.k0, resonant_params.gamma)
        assert coincidence_ratio(psi, psi, resonant_params) == pytest.approx(2.0, abs=1e-2)

    def test_ratio_is_one_without_bound_term(self, detuned_params):
        """Test independent scattering gives a ratio of exactly one"""
        psi = make_exponential_mode(detuned_params.k0, detuned_params.gamma)
        ratio = coincidence_ratio(psi, psi, detuned_params, include_bound_term=False)
        assert ratio == pytest.approx(1.0, abs=1e-12)


class TestOracleErrors:
    """Test the oracle rejects inputs it cannot resolve"""

    def test_short_window(self, detuned_params, principal, grid):
        """Test a window holding too little of the pulse raises"""
        with pytest.raises(ResolutionInsufficientError):
            scatter_two_photon_timedomain(principal, principal, detuned_params, grid, window_decay_lengths=2.0)

    def test_coarse_step(self, detuned_params, principal, grid):
        """Test a z step too coarse for the detuning raises"""
        with pytest.raises(ResolutionInsufficientError):
            scatter_two_photon_timedomain(principal, principal, detuned_params, grid, z_resolution=50)

    def test_needs_principal_modes(self, detuned_params, principal, grid):
        """Test grid samples are rejected"""
        with pytest.raises(InvalidParameterError):
            scatter_two_photon_timedomain(principal.sample(grid), principal, detuned_params, grid)
