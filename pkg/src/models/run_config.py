"""Resolved command-line configuration"""

from dataclasses import dataclass, field, asdict
from typing import List, Optional, Dict, Any

from ..exceptions import InvalidParameterError
from .gate_params import GateParams

COMMANDS = ("sweep", "metrics", "purity", "cascade", "optimize", "pmp-load", "verify")
FORMATS = ("csv", "json")


@dataclass
class RunConfig:
    """One simulator invocation, echoed verbatim into every artifact it writes"""

    command: str
    gamma: float = 1.0
    coupling: float = 1.0
    gamma_h: Optional[float] = None
    gamma_v: Optional[float] = None
    delta: float = 5.0
    delta_min: float = -4.0
    delta_max: float = 4.0
    points: int = 81
    n_values: List[float] = field(default_factory=lambda: [1e3, 1e5, 1e7])
    steps: int = 20
    fit_range: Optional[List[int]] = None
    resolution: int = 512
    cutoff: float = 40.0
    include_purity: bool = True
    output: Optional[str] = None
    fmt: str = "csv"
    seed: int = 0

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise InvalidParameterError(f"Unknown command '{self.command}'. Expected one of {COMMANDS}")
        if self.fmt not in FORMATS:
            raise InvalidParameterError(f"Unknown output format '{self.fmt}'. Expected one of {FORMATS}")
        positive = {"gamma": self.gamma, "coupling": self.coupling, "cutoff": self.cutoff}
        if self.gamma_h is not None:
            positive["gamma_h"] = self.gamma_h
        if self.gamma_v is not None:
            positive["gamma_v"] = self.gamma_v
        for name, value in positive.items():
            if not value > 0:
                raise InvalidParameterError(f"--{name.replace('_', '-')} must be positive, got {value}")
        if self.points < 2:
            raise InvalidParameterError(f"--points must be at least 2, got {self.points}")
        if self.steps < 1:
            raise InvalidParameterError(f"--steps must be at least 1, got {self.steps}")
        if self.delta_min > self.delta_max:
            raise InvalidParameterError("--delta-min must not exceed --delta-max")
        if self.fit_range is not None:
            if len(self.fit_range) != 2 or not 1 <= self.fit_range[0] < self.fit_range[1]:
                raise InvalidParameterError(f"--fit-range needs LOW < HIGH with LOW >= 1, got {self.fit_range}")
            self.fit_range = [int(n) for n in self.fit_range]

    def gate_params(self, delta: Optional[float] = None) -> GateParams:
        """Physical parameters in units of the coupling, atom at zero"""
        detuning = self.delta if delta is None else delta
        return GateParams(
            k0=detuning,
            gamma=self.gamma,
            omega1=0.0,
            gammaH=self.gamma_h if self.gamma_h is not None else self.coupling,
            gammaV=self.gamma_v if self.gamma_v is not None else self.coupling,
        )

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)
