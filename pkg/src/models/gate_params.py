"""Physical parameter set of the phase gate"""

import math
from dataclasses import dataclass, replace

from ..exceptions import InvalidParameterError


@dataclass(frozen=True)
class GateParams:
    """
    Carrier, bandwidth, atomic resonance and couplings of one gate

    All quantities are wavenumbers or rates in the same inverse-length unit;
    the usual convention sets the coupling to 1. The detuning is derived from
    ``k0`` and ``omega1`` and never stored.
    """

    k0: float
    gamma: float
    omega1: float = 0.0
    gammaH: float = 1.0
    gammaV: float = 1.0

    def __post_init__(self):
        for name in ("k0", "gamma", "omega1", "gammaH", "gammaV"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise InvalidParameterError(f"{name} must be finite, got {value}")
        for name in ("gamma", "gammaH", "gammaV"):
            if getattr(self, name) <= 0:
                raise InvalidParameterError(f"{name} must be positive, got {getattr(self, name)}")

    @property
    def delta(self) -> float:
        """Detuning of the carrier from the atomic resonance"""
        return self.k0 - self.omega1

    @property
    def is_symmetric(self) -> bool:
        return self.gammaH == self.gammaV

    @property
    def coupling(self) -> float:
        """Mean coupling, the natural unit of every rate"""
        return 0.5 * (self.gammaH + self.gammaV)

    @property
    def ratio(self) -> float:
        """Bandwidth-to-coupling ratio r"""
        return self.gamma / self.coupling

    @classmethod
    def symmetric(cls, gamma: float = 1.0, delta: float = 0.0, coupling: float = 1.0,
                  omega1: float = 0.0) -> "GateParams":
        """Equal couplings, with the carrier placed ``delta`` above ``omega1``"""
        return cls(k0=omega1 + delta, gamma=gamma, omega1=omega1,
                   gammaH=coupling, gammaV=coupling)

    def with_detuning(self, delta: float) -> "GateParams":
        """Same atom, carrier moved to ``omega1 + delta``"""
        return replace(self, k0=self.omega1 + delta)

    def mirrored(self) -> "GateParams":
        """Atom moved to ``2 k0 - omega1``, which flips the sign of the detuning"""
        return replace(self, omega1=2.0 * self.k0 - self.omega1)

    def to_dict(self):
        return {
            "k0": self.k0,
            "gamma": self.gamma,
            "omega1": self.omega1,
            "gammaH": self.gammaH,
            "gammaV": self.gammaV,
            "delta": self.delta,
        }
