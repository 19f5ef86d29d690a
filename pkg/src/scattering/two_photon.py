"""Two-photon scattering in Fourier space"""

import logging
from dataclasses import dataclass, replace
from typing import List, Optional, Tuple

import numpy as np

from ..exceptions import GridMismatchError, InvalidParameterError, InvalidStateError, ResolutionInsufficientError
from ..spectral.amplitudes import PoleMode, SpectralAmplitude
from ..spectral.quadrature import KGrid, build_feature_grid, composite_grid, interpolation_weights
from .kernel import Polarization, PropagatorKernel

logger = logging.getLogger(__name__)

H = Polarization.H
V = Polarization.V


@dataclass(frozen=True)
class GatedPair:
    """
    Exact two-photon state after repeated gates on a product of rising pole modes

    The state is (p_H p_V)^phase_power [psi_H psi_V + G(K) / (dt*_H dt*_V)], with
    dt* the conjugate resonant denominators, K = k_H + k_V, and G obeying
    G <- mu G + i Gamma_H Gamma_V I0 once per gate.
    """

    kernel: PropagatorKernel
    mode_h: PoleMode
    mode_v: PoleMode
    gates: int = 0
    phase_power: int = 0

    def __post_init__(self):
        if not (self.mode_h.is_rising and self.mode_v.is_rising):
            raise InvalidParameterError("Closed-form pairs need modes with lower-half-plane poles")
        if self.gates < 0:
            raise InvalidParameterError("Gate count cannot be negative")

    @property
    def _couplings(self) -> Tuple[float, float]:
        return self.kernel.coupling(H), self.kernel.coupling(V)

    def i0(self, K):
        """Kernel integral of the unscattered product at total wavenumber K"""
        K = np.asarray(K)
        ph, pv = self.mode_h.pole, self.mode_v.pole
        qh = K - pv
        qv = K - ph
        term_h = -1j * self.mode_v.amplitude * self.mode_h.evaluate(qh) / self.kernel.delta_tilde(qh, H)
        term_v = -1j * self.mode_h.amplitude * self.mode_v.evaluate(qv) / self.kernel.delta_tilde(qv, V)
        return term_h + term_v

    def mu(self, K):
        """Unit-modulus feedback factor picked up by the bound part at every gate"""
        K = np.asarray(K)
        mean = 0.5 * sum(self._couplings)
        detuned = K - 2.0 * self.kernel.omega
        return (detuned + 1j * mean) / (detuned - 1j * mean)

    def g(self, K):
        gamma_h, gamma_v = self._couplings
        K = np.asarray(K)
        source = 1j * gamma_h * gamma_v * self.i0(K)
        mu = self.mu(K)
        value = np.zeros(np.shape(K), dtype=complex)
        for _ in range(self.gates):
            value = mu * value + source
        return value

    def evaluate(self, k_h, k_v) -> np.ndarray:
        """State on the product of two node arrays"""
        k_h = np.asarray(k_h, dtype=float)[:, None]
        k_v = np.asarray(k_v, dtype=float)[None, :]
        product = self.mode_h.evaluate(k_h) * self.mode_v.evaluate(k_v)
        if self.gates:
            bound = self.g(k_h + k_v) / (
                self.kernel.delta_tilde_conj(k_h, H) * self.kernel.delta_tilde_conj(k_v, V)
            )
            product = product + bound
        if self.phase_power:
            linear = self.kernel.phase(k_h, H) * self.kernel.phase(k_v, V)
            product = product * linear ** self.phase_power
        return product

    def j(self, K):
        """Projection of the bound part onto the unscattered product, per total wavenumber"""
        K = np.asarray(K)
        a_h = np.conj(self.mode_h.pole)
        a_v = np.conj(self.mode_v.pole)
        b_h = self.kernel.omega + 0.5j * self.kernel.coupling(H)
        b_v = self.kernel.omega + 0.5j * self.kernel.coupling(V)
        constant = np.conj(self.mode_h.amplitude) * np.conj(self.mode_v.amplitude)
        q1 = K - a_v
        q2 = K - b_v

        def g_of(q):
            return 1.0 / ((q - a_h) * (q - b_h))

        gap = b_v - a_v
        scale = abs(a_v.imag) + abs(b_v.imag)
        if abs(gap) > 1e-7 * scale:
            divided = (g_of(q1) - g_of(q2)) / (q1 - q2)
        else:
            q = 0.5 * (q1 + q2)
            divided = -((q - b_h) + (q - a_h)) / ((q - a_h) ** 2 * (q - b_h) ** 2)
        return -1j * constant * divided

    def pair_features(self) -> List[Tuple[float, float]]:
        omega = self.kernel.omega
        gamma_h, gamma_v = self._couplings
        poles = [
            self.mode_h.pole + self.mode_v.pole,
            complex(2.0 * omega, 0.5 * (gamma_h + gamma_v)),
            self.mode_v.pole + omega - 0.5j * gamma_h,
            self.mode_h.pole + omega - 0.5j * gamma_v,
        ]
        return [(p.real, 2.0 * abs(p.imag)) for p in poles]

    def overlap(self, resolution: int = 512, cutoff: float = 40.0) -> complex:
        """<psi_H psi_V | state>, reduced to one integral over K"""
        if self.phase_power != 0:
            raise InvalidStateError("Closed-form overlap needs the linear evolution removed")
        overlap = self.mode_h.norm_squared() * self.mode_v.norm_squared()
        if self.gates == 0:
            return complex(overlap)
        grid = build_feature_grid(self.pair_features(), resolution=resolution, cutoff=cutoff)
        return complex(overlap + grid.integrate(self.j(grid.nodes) * self.g(grid.nodes)))

    def scattered(self) -> "GatedPair":
        if self.phase_power != 0:
            raise InvalidStateError("Closed form tracks scattering only after linear removal")
        return replace(self, gates=self.gates + 1, phase_power=1)

    def removed(self) -> "GatedPair":
        return replace(self, phase_power=self.phase_power - 1)


class TwoPhotonAmplitude:
    """Joint H/V amplitude over the product of two wavenumber grids"""

    def __init__(
        self,
        grid_h: KGrid,
        grid_v: KGrid,
        values: Optional[np.ndarray] = None,
        closed_form: Optional[GatedPair] = None,
    ):
        if values is None and closed_form is None:
            raise InvalidParameterError("A two-photon amplitude needs values or a closed form")
        if values is not None and values.shape != (grid_h.size, grid_v.size):
            raise InvalidParameterError(
                f"Values of shape {values.shape} do not fit grids {grid_h.size}x{grid_v.size}"
            )
        self.grid_h = grid_h
        self.grid_v = grid_v
        self.closed_form = closed_form
        self._values = values

    @classmethod
    def product(
        cls,
        psi_h: SpectralAmplitude,
        psi_v: SpectralAmplitude,
        grid_h: KGrid,
        grid_v: Optional[KGrid] = None,
        kernel: Optional[PropagatorKernel] = None,
    ) -> "TwoPhotonAmplitude":
        """psi_H(k_H) psi_V(k_V); rising pure modes with a kernel keep an exact closed form"""
        grid_v = grid_v or grid_h
        if kernel is not None and psi_h.is_pure_mode and psi_v.is_pure_mode \
                and psi_h.mode.is_rising and psi_v.mode.is_rising:
            return cls(grid_h, grid_v, closed_form=GatedPair(kernel, psi_h.mode, psi_v.mode))
        values = np.multiply.outer(psi_h.values_on(grid_h), psi_v.values_on(grid_v))
        return cls(grid_h, grid_v, values=values)

    @property
    def values(self) -> np.ndarray:
        if self._values is None:
            self._values = self.closed_form.evaluate(self.grid_h.nodes, self.grid_v.nodes)
        return self._values

    def _check_grids(self, other: "TwoPhotonAmplitude"):
        if not (self.grid_h.matches(other.grid_h) and self.grid_v.matches(other.grid_v)):
            raise GridMismatchError("Two-photon amplitudes live on different grids")

    def norm_squared(self) -> float:
        return float(self.grid_h.measure @ np.abs(self.values) ** 2 @ self.grid_v.measure)

    def inner_product(self, other: "TwoPhotonAmplitude") -> complex:
        self._check_grids(other)
        return complex(self.grid_h.measure @ (np.conj(self.values) * other.values) @ self.grid_v.measure)

    def l2_distance(self, other: "TwoPhotonAmplitude") -> float:
        self._check_grids(other)
        diff = np.abs(self.values - other.values) ** 2
        return float(np.sqrt(self.grid_h.measure @ diff @ self.grid_v.measure))

    def overlap_with_product(
        self,
        psi_h: SpectralAmplitude,
        psi_v: SpectralAmplitude,
        resolution: Optional[int] = None,
    ) -> complex:
        """<psi_H psi_V | state>; exact through the closed form when it describes this product"""
        closed = self.closed_form
        if closed is not None and closed.phase_power == 0 and psi_h.is_pure_mode and psi_v.is_pure_mode \
                and psi_h.mode == closed.mode_h and psi_v.mode == closed.mode_v:
            return closed.overlap(
                resolution=resolution or max(self.grid_h.resolution, 512),
                cutoff=self.grid_h.cutoff or 40.0,
            )
        weights = np.multiply.outer(
            self.grid_h.measure * np.conj(psi_h.values_on(self.grid_h)),
            self.grid_v.measure * np.conj(psi_v.values_on(self.grid_v)),
        )
        return complex(np.sum(weights * self.values))

    def transposed(self) -> "TwoPhotonAmplitude":
        return TwoPhotonAmplitude(self.grid_v, self.grid_h, values=self.values.T.copy())

    def with_linear_removal(self, kernel: PropagatorKernel) -> "TwoPhotonAmplitude":
        closed = self.closed_form
        if closed is not None and closed.kernel == kernel:
            return TwoPhotonAmplitude(self.grid_h, self.grid_v, closed_form=closed.removed())
        removal = np.multiply.outer(
            np.conj(kernel.phase(self.grid_h.nodes, H)), np.conj(kernel.phase(self.grid_v.nodes, V))
        )
        return TwoPhotonAmplitude(self.grid_h, self.grid_v, values=self.values * removal)


def scatter_two_photon(
    phi: TwoPhotonAmplitude,
    kernel: PropagatorKernel,
    method: str = "auto",
    pair_grid: Optional[KGrid] = None,
    tolerance: float = 1e-6,
    check_convergence: bool = True,
) -> TwoPhotonAmplitude:
    """
    Apply the two-photon scattering matrix

    Phi'(k_H, k_V) = p_H p_V Phi + i Gamma_H Gamma_V / (dt_H dt_V) * I(K), with
    I(K) = int dq/2pi (1/dt_H(q) + 1/dt_V(K - q)) Phi(q, K - q).

    Args:
        phi: Input pair
        kernel: Propagator kernel
        method: "residue" uses the closed form, "quadrature" integrates the
            sampled pair along each line of constant K, "auto" prefers the
            closed form when there is one
        pair_grid: Grid over K on which I(K) is sampled; built from the
            features of the input grids when omitted
        tolerance: Largest relative change of I(K) allowed when the line
            quadrature is refined
        check_convergence: Refine the line quadrature once and compare

    Returns:
        Scattered pair

    Raises:
        ResolutionInsufficientError: If refining the line quadrature moves I(K) by more than ``tolerance``
    """
    if method not in ("auto", "residue", "quadrature"):
        raise InvalidParameterError(f"Unknown scattering method '{method}'")
    closed = phi.closed_form
    closed_ok = closed is not None and closed.phase_power == 0 and closed.kernel == kernel
    if method == "residue" and not closed_ok:
        raise InvalidParameterError("Residue scattering needs a closed-form pair with linear evolution removed")
    if method != "quadrature" and closed_ok:
        return TwoPhotonAmplitude(phi.grid_h, phi.grid_v, closed_form=closed.scattered())

    pair_grid = pair_grid or _pair_grid(phi, kernel)
    integral = _line_integrals(phi, kernel, pair_grid, subdivide=1)
    if check_convergence:
        refined = _line_integrals(phi, kernel, pair_grid, subdivide=2)
        scale = np.sqrt(pair_grid.measure @ np.abs(refined) ** 2)
        change = np.sqrt(pair_grid.measure @ np.abs(refined - integral) ** 2) / max(scale, 1e-300)
        logger.debug(f"Line quadrature on {pair_grid.size} totals, refinement change {change:.2e}")
        if change > tolerance:
            raise ResolutionInsufficientError(
                f"Two-photon kernel integral not converged: refining changed it by {change:.2e}"
            )
        integral = refined

    k_h = phi.grid_h.nodes
    k_v = phi.grid_v.nodes
    index, weights = interpolation_weights(pair_grid, np.add.outer(k_h, k_v))
    bound = np.sum(weights * integral[index], axis=-1)

    linear = np.multiply.outer(kernel.phase(k_h, H), kernel.phase(k_v, V))
    denominators = np.multiply.outer(kernel.delta_tilde(k_h, H), kernel.delta_tilde(k_v, V))
    gamma_h, gamma_v = kernel.coupling(H), kernel.coupling(V)
    scattered = linear * phi.values + 1j * gamma_h * gamma_v * bound / denominators
    return TwoPhotonAmplitude(phi.grid_h, phi.grid_v, values=scattered)


def _pair_grid(phi: TwoPhotonAmplitude, kernel: PropagatorKernel) -> KGrid:
    """Grid over K resolving every sum of an H feature and a V feature"""
    if not (phi.grid_h.features and phi.grid_v.features):
        raise InvalidParameterError("Grids without recorded features need an explicit pair grid")
    features = {(ch + cv, wh + wv) for ch, wh in phi.grid_h.features for cv, wv in phi.grid_v.features}
    features.add((2.0 * kernel.omega, kernel.coupling(H) + kernel.coupling(V)))
    return build_feature_grid(
        sorted(features),
        resolution=phi.grid_h.resolution or 512,
        cutoff=phi.grid_h.cutoff or 40.0,
    )


def _line_integrals(
    phi: TwoPhotonAmplitude, kernel: PropagatorKernel, pair_grid: KGrid, subdivide: int
) -> np.ndarray:
    """I(K) at every node of ``pair_grid``"""
    grid_h, grid_v = phi.grid_h, phi.grid_v
    values = phi.values
    edges_h = grid_h.edges
    edges_v = grid_v.edges
    order = max(p.order for p in grid_h.panels + grid_v.panels)
    tail = max(grid_h.tail_scale, grid_v.tail_scale)

    integral = np.empty(pair_grid.size, dtype=complex)
    for m, total in enumerate(pair_grid.nodes):
        # Panels break wherever q crosses an H edge or K - q crosses a V edge
        line = composite_grid(np.concatenate([edges_h, total - edges_v]), order, tail, tail, subdivide)
        q = line.nodes
        index_h, weights_h = interpolation_weights(grid_h, q)
        index_v, weights_v = interpolation_weights(grid_v, total - q)
        block = values[index_h[:, :, None], index_v[:, None, :]]
        samples = np.einsum("np,npr,nr->n", weights_h, block, weights_v)
        kernel_factor = 1.0 / kernel.delta_tilde(q, H) + 1.0 / kernel.delta_tilde(total - q, V)
        integral[m] = line.integrate(kernel_factor * samples)
    return integral
