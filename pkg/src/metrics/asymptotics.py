"""Closed-form asymptotics of the nonlinear phase and error"""

from typing import Tuple

from ..exceptions import InvalidParameterError
from ..models.gate_params import GateParams


def bandwidth_factors(r: float) -> Tuple[float, float]:
    """
    Far-detuned bandwidth corrections at r = gamma / Gamma

    Returns (f, h): phi_NL = (gamma Gamma^2 / delta^3) f and err_sq = (Gamma / delta) h phi_NL.
    """
    if not r > 0:
        raise InvalidParameterError(f"Bandwidth ratio must be positive, got {r}")
    f = (1.0 + 5.0 * r) / (1.0 + r)
    h = (1.0 + 10.0 * r + r * r) / (1.0 + 5.0 * r)
    return f, h


def require_symmetric_couplings(params: GateParams):
    if not params.is_symmetric:
        raise InvalidParameterError("Closed forms assume equal couplings for both polarizations")


def closed_form_weak(params: GateParams) -> Tuple[float, float]:
    """
    Weak-excitation (gamma << Gamma) phase and error: dispersion and absorption curves

    phi_NL = gamma Gamma^2 delta / [delta^2 + (Gamma/2)^2]^2 and err_sq = (Gamma/delta) phi_NL.
    At delta = 0 the error takes its limit 16 gamma / Gamma.
    """
    require_symmetric_couplings(params)
    Gamma = params.gammaH
    delta = params.delta
    lorentz = (delta ** 2 + 0.25 * Gamma ** 2) ** 2
    phi_nl = params.gamma * Gamma ** 2 * delta / lorentz
    err_sq = params.gamma * Gamma ** 3 / lorentz
    return phi_nl, err_sq


def closed_form_far_detuned(params: GateParams) -> Tuple[float, float]:
    """
    Far-detuned phase and error, valid for |delta| >> Gamma at any bandwidth

    phi_NL = (gamma Gamma^2 / delta^3) f(r) and err_sq = (Gamma/delta) h(r) phi_NL, r = gamma/Gamma.
    """
    require_symmetric_couplings(params)
    delta = params.delta
    if delta == 0:
        raise InvalidParameterError("Far-detuned closed form is undefined at zero detuning")
    Gamma = params.gammaH
    f, h = bandwidth_factors(params.ratio)
    phi_nl = params.gamma * Gamma ** 2 / delta ** 3 * f
    err_sq = Gamma / delta * h * phi_nl
    return phi_nl, err_sq
