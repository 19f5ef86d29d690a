"""Shared fixtures"""

import pytest

from src.models.gate_params import GateParams
from src.spectral.amplitudes import make_exponential_mode
from src.spectral.quadrature import build_kgrid


@pytest.fixture
def resonant_params():
    """Equal bandwidth and coupling, carrier on the atomic line"""
    return GateParams.symmetric(gamma=1.0, delta=0.0)


@pytest.fixture
def detuned_params():
    """Equal bandwidth and coupling, five linewidths off resonance"""
    return GateParams.symmetric(gamma=1.0, delta=5.0)


@pytest.fixture
def principal(detuned_params):
    return make_exponential_mode(detuned_params.k0, detuned_params.gamma)


@pytest.fixture
def grid(detuned_params):
    return build_kgrid(detuned_params, resolution=512, cutoff=40.0)
