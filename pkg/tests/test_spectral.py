"""Test spectral amplitudes, grids and Fourier helpers"""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from src.exceptions import GridMismatchError, InvalidParameterError
from src.models.gate_params import GateParams
from src.spectral.amplitudes import (
    PhaseFactor,
    PoleMode,
    SpectralAmplitude,
    inner_product,
    invert_pulse,
    make_exponential_mode,
    rational_line_integral,
)
from src.spectral.fourier import hat_transform, half_hat_transform, piecewise_linear_transform
from src.spectral.quadrature import KGrid, build_feature_grid, build_kgrid, interpolation_weights

carriers = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False)
bandwidths = st.floats(min_value=0.05, max_value=5.0, allow_nan=False)


class TestExponentialMode:
    """Test the principal mode"""

    def test_closed_form_norm_is_one(self):
        """Test the analytic norm is exactly one for any carrier and bandwidth"""
        for k0, gamma in [(0.0, 1.0), (3.0, 0.01), (-7.5, 4.0)]:
            assert make_exponential_mode(k0, gamma).norm_squared() == pytest.approx(1.0, abs=1e-12)

    def test_grid_norm(self, principal, grid):
        """Test the sampled mode integrates to one on the gate grid"""
        assert principal.sample(grid).norm_squared() == pytest.approx(1.0, abs=1e-6)

    def test_grid_norm_narrow_pulse(self):
        """Test a pulse much narrower than the atom is still resolved"""
        params = GateParams.symmetric(gamma=0.01, delta=2.0)
        psi = make_exponential_mode(params.k0, params.gamma)
        assert psi.sample(build_kgrid(params)).norm_squared() == pytest.approx(1.0, abs=1e-6)

    def test_rejects_nonpositive_bandwidth(self):
        """Test zero bandwidth raises"""
        with pytest.raises(InvalidParameterError):
            make_exponential_mode(0.0, 0.0)

    def test_real_space_is_rising_exponential(self):
        """Test the real-space form vanishes ahead of the pulse front"""
        psi = make_exponential_mode(2.0, 1.0)
        z = np.array([-2.0, -1.0, 0.5, 3.0])
        values = psi.real_space(z)
        assert np.all(values[2:] == 0)
        assert np.allclose(np.abs(values[:2]), np.exp(0.5 * z[:2]))

    def test_sample_normalize(self, principal):
        """Test normalized sampling yields unit discrete norm"""
        coarse = build_kgrid(GateParams.symmetric(gamma=1.0, delta=5.0), resolution=64, cutoff=4.0)
        assert principal.sample(coarse, normalize=True).norm_squared() == pytest.approx(1.0, abs=1e-12)


class TestInversion:
    """Test spectral inversion about the carrier"""

    def test_involution_closed_form(self, principal, grid, detuned_params):
        """Test inverting twice gives back the mode"""
        twice = invert_pulse(invert_pulse(principal, detuned_params.k0), detuned_params.k0)
        assert np.max(np.abs(twice.evaluate(grid.nodes) - principal.evaluate(grid.nodes))) < 1e-12

    def test_inverted_pole_moves_to_upper_half_plane(self, principal, detuned_params):
        """Test the inverted mode is a decaying exponential"""
        inverted = invert_pulse(principal, detuned_params.k0)
        assert not inverted.mode.is_rising
        assert inverted.mode.pole == pytest.approx(complex(detuned_params.k0, 0.5))

    def test_inversion_on_symmetric_grid(self, principal, detuned_params):
        """Test on-grid inversion matches the closed form"""
        grid = build_kgrid(detuned_params, symmetric=True)
        sampled = invert_pulse(principal.sample(grid), detuned_params.k0)
        exact = invert_pulse(principal, detuned_params.k0).evaluate(grid.nodes)
        assert np.max(np.abs(sampled.values - exact)) < 1e-12

    def test_inversion_needs_symmetric_grid(self, principal, grid, detuned_params):
        """Test an asymmetric grid cannot be inverted in place"""
        with pytest.raises(GridMismatchError):
            invert_pulse(principal.sample(grid), detuned_params.k0)

    def test_phase_factor_inversion(self):
        """Test an inverted phase factor is the reflected conjugate factor"""
        factor = PhaseFactor(center=1.0, width=0.5)
        psi = SpectralAmplitude(mode=PoleMode(1j, complex(0.0, -0.5)), phases=(factor,))
        k = np.linspace(-3.0, 3.0, 13)
        inverted = invert_pulse(psi, 0.25)
        assert np.allclose(inverted.evaluate(k), psi.evaluate(0.5 - k))


class TestInnerProduct:
    """Test closed-form and grid inner products"""

    def test_closed_form_matches_grid(self, grid):
        """Test residue evaluation agrees with quadrature"""
        a = make_exponential_mode(5.0, 1.0)
        b = make_exponential_mode(4.0, 2.0)
        exact = inner_product(a, b)
        sampled = inner_product(a.sample(grid), b.sample(grid))
        assert abs(exact - sampled) < 1e-6

    def test_overlap_of_exponentials(self):
        """Test |<a|b>|^2 equals the bandwidth-mismatch formula"""
        a = make_exponential_mode(0.0, 1.0)
        b = make_exponential_mode(0.0, 2.0)
        assert abs(inner_product(a, b)) ** 2 == pytest.approx(8.0 / 9.0, rel=1e-12)

    def test_phase_factor_cancels_against_adjoint(self, principal):
        """Test multiplying by a factor and its adjoint restores the pure mode"""
        factor = PhaseFactor(0.0, 1.0)
        restored = principal.with_phase(factor).with_phase(factor.adjoint())
        assert restored.is_pure_mode

    def test_grid_mismatch(self, principal, grid):
        """Test samples on different grids cannot be combined"""
        other = build_kgrid(GateParams.symmetric(gamma=1.0, delta=1.0))
        with pytest.raises(GridMismatchError):
            inner_product(principal.sample(grid), principal.sample(other))

    @settings(max_examples=40, deadline=None)
    @given(carriers, bandwidths, carriers, bandwidths)
    def test_conjugate_symmetry(self, k1, g1, k2, g2):
        """Test <a|b> = conj(<b|a>)"""
        a = make_exponential_mode(k1, g1)
        b = make_exponential_mode(k2, g2)
        assert inner_product(a, b) == pytest.approx(np.conj(inner_product(b, a)), abs=1e-12)

    @settings(max_examples=20, deadline=None)
    @given(st.integers(min_value=0, max_value=2 ** 32 - 1))
    def test_conjugate_symmetry_on_grid(self, seed):
        """Test <a|b> = conj(<b|a>) for random grid functions"""
        grid = build_kgrid(GateParams.symmetric(gamma=1.0, delta=5.0), resolution=128)
        rng = np.random.default_rng(seed)
        a, b = (
            SpectralAmplitude(grid=grid, values=rng.normal(size=grid.size) + 1j * rng.normal(size=grid.size))
            for _ in range(2)
        )
        assert inner_product(a, b) == pytest.approx(np.conj(inner_product(b, a)), rel=1e-12, abs=1e-12)

    @settings(max_examples=40, deadline=None)
    @given(carriers, bandwidths, carriers, bandwidths)
    def test_cauchy_schwarz(self, k1, g1, k2, g2):
        """Test overlaps of normalized modes never exceed one"""
        a = make_exponential_mode(k1, g1)
        b = make_exponential_mode(k2, g2)
        assert abs(inner_product(a, b)) <= 1.0 + 1e-12


class TestRationalLineIntegral:
    """Test contour integration of rational functions"""

    def test_lorentzian(self):
        """Test int dk/2pi 1/(k^2 + 1) = 1/2"""
        assert rational_line_integral(1.0, [], [1j, -1j]) == pytest.approx(0.5, abs=1e-14)

    def test_same_half_plane_poles_vanish(self):
        """Test poles all on one side give zero"""
        assert rational_line_integral(1.0, [], [1j, 2j]) == pytest.approx(0.0, abs=1e-14)

    def test_repeated_pole_uses_other_half_plane(self):
        """Test a double pole below is handled by closing above"""
        # int dk/2pi 1/((k+i)^2 (k-i)) = i * 1/(2i)^2 = -i/4
        assert rational_line_integral(1.0, [], [-1j, -1j, 1j]) == pytest.approx(-0.25j, abs=1e-14)

    def test_needs_decay(self):
        """Test integrands decaying slower than 1/k^2 are rejected"""
        with pytest.raises(InvalidParameterError):
            rational_line_integral(1.0, [0.0], [1j, -1j])

    def test_rejects_real_pole(self):
        """Test a pole on the real axis is rejected"""
        with pytest.raises(InvalidParameterError):
            rational_line_integral(1.0, [], [1.0, 1j])


class TestGrids:
    """Test composite Gauss-Legendre grids"""

    def test_symmetric_grid(self, detuned_params):
        """Test the mirrored grid is symmetric about the carrier"""
        grid = build_kgrid(detuned_params, symmetric=True)
        assert grid.is_symmetric_about(detuned_params.k0)

    def test_nodes_increasing_and_weights_positive(self, grid):
        """Test basic grid invariants"""
        assert np.all(np.diff(grid.nodes) > 0)
        assert np.all(grid.weights > 0)

    def test_lorentzian_integral(self):
        """Test a narrow Lorentzian far from the origin integrates exactly"""
        grid = build_feature_grid([(30.0, 0.02)], resolution=256)
        values = 0.02 / ((grid.nodes - 30.0) ** 2 + 1e-4)
        assert grid.integrate(values).real == pytest.approx(1.0, abs=1e-7)

    def test_rejects_low_resolution(self, detuned_params):
        """Test resolutions below the minimum raise"""
        with pytest.raises(InvalidParameterError):
            build_kgrid(detuned_params, resolution=16)

    def test_rejects_small_cutoff(self, detuned_params):
        """Test window multipliers below one raise"""
        with pytest.raises(InvalidParameterError):
            build_kgrid(detuned_params, cutoff=0.5)

    def test_far_detuned_grid_norm(self):
        """Test disjoint pulse and atom windows still normalize the mode"""
        params = GateParams.symmetric(gamma=1.0, delta=30.0)
        psi = make_exponential_mode(params.k0, params.gamma)
        assert psi.sample(build_kgrid(params)).norm_squared() == pytest.approx(1.0, abs=1e-6)

    @pytest.mark.parametrize("delta", [0.0, 5.0])
    def test_doubling_resolution_converges(self, delta):
        """Test norms and overlaps move by less than 1e-6 when the resolution doubles"""
        params = GateParams.symmetric(gamma=1.0, delta=delta)
        psi = make_exponential_mode(params.k0, params.gamma)
        other = make_exponential_mode(params.k0 + 1.0, 2.0)
        coarse, fine = build_kgrid(params, resolution=512), build_kgrid(params, resolution=1024)
        assert abs(psi.sample(coarse).norm_squared() - psi.sample(fine).norm_squared()) < 1e-6
        assert abs(
            inner_product(psi.sample(coarse), other.sample(coarse))
            - inner_product(psi.sample(fine), other.sample(fine))
        ) < 1e-6


class TestInterpolation:
    """Test Lagrange interpolation on grid panels"""

    def test_reproduces_mode_between_nodes(self, principal, grid):
        """Test off-node values of the principal mode, tails included"""
        points = np.concatenate([np.linspace(-60.0, 70.0, 2001), [-5e3, -300.0, 250.0, 1e4]])
        index, weights = interpolation_weights(grid, points)
        values = principal.values_on(grid)
        interpolated = np.sum(weights * values[index], axis=-1)
        assert np.max(np.abs(interpolated - principal.evaluate(points))) < 1e-7

    def test_exact_at_nodes(self, principal, grid):
        """Test interpolation at the nodes returns the samples"""
        values = principal.values_on(grid)
        index, weights = interpolation_weights(grid, grid.nodes)
        assert np.allclose(np.sum(weights * values[index], axis=-1), values, rtol=0.0, atol=1e-10)

    def test_keeps_point_shape(self, grid):
        """Test index and weight arrays follow the shape of the points"""
        index, weights = interpolation_weights(grid, np.zeros((3, 4)))
        order = grid.panels[0].order
        assert index.shape == weights.shape == (3, 4, order)

    def test_symmetric_grid_tails(self, principal, detuned_params):
        """Test mirrored tail panels interpolate like the originals"""
        grid = build_kgrid(detuned_params, symmetric=True)
        points = np.array([-400.0, -50.0, 60.0, 800.0])
        index, weights = interpolation_weights(grid, points)
        interpolated = np.sum(weights * principal.values_on(grid)[index], axis=-1)
        assert np.max(np.abs(interpolated - principal.evaluate(points))) < 1e-7

    def test_needs_panels(self):
        """Test bare node arrays cannot be interpolated"""
        grid = KGrid(nodes=np.array([0.0, 1.0]), weights=np.array([1.0, 1.0]))
        with pytest.raises(InvalidParameterError):
            interpolation_weights(grid, np.array([0.5]))


class TestFourier:
    """Test transforms of sampled real-space profiles"""

    def test_hat_transform_at_zero(self):
        """Test the hat transform is one at zero"""
        assert hat_transform(0.0) == pytest.approx(1.0)
        assert half_hat_transform(0.0) == pytest.approx(0.5)

    def test_half_hat_series_is_continuous(self):
        """Test the small-argument series joins the exact form"""
        assert half_hat_transform(0.999e-3) == pytest.approx(half_hat_transform(1.001e-3), abs=1e-6)

    def test_exponential_transform(self):
        """Test the transform of exp(z) on z <= 0 is 1/(1 - ik)"""
        z = np.linspace(-40.0, 0.0, 8001)
        k = np.array([-3.0, -0.5, 0.0, 0.7, 2.0])
        result = piecewise_linear_transform(z, np.exp(z), k)
        assert np.allclose(result, 1.0 / (1.0 - 1j * k), atol=1e-5)
