"""Mode functions, wavenumber grids, inner products and quadrature"""

from .quadrature import (
    Panel,
    KGrid,
    build_kgrid,
    build_pair_grid,
    build_feature_grid,
    gate_features,
    pair_features,
)
from .amplitudes import (
    PoleMode,
    PhaseFactor,
    SpectralAmplitude,
    make_exponential_mode,
    inner_product,
    invert_pulse,
    rational_line_integral,
)
from .fourier import piecewise_linear_transform

__all__ = [
    'Panel',
    'KGrid',
    'build_kgrid',
    'build_pair_grid',
    'build_feature_grid',
    'gate_features',
    'pair_features',
    'PoleMode',
    'PhaseFactor',
    'SpectralAmplitude',
    'make_exponential_mode',
    'inner_product',
    'invert_pulse',
    'rational_line_integral',
    'piecewise_linear_transform',
]
