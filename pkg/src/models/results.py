"""Result models for gate metrics, fidelity searches, cascades and optimizer runs"""

import cmath
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Any

import numpy as np
import pandas as pd

from ..exceptions import InvalidStateError


@dataclass
class GateMetrics:
    """Observables of one primitive gate"""

    delta: float
    A: complex
    phi_h: float
    phi_v: float
    err_h: float
    err_v: float
    purity: Optional[float] = None

    # Derived from A in __post_init__
    zeta: complex = field(init=False)
    phi_nl: float = field(init=False)
    err_sq: float = field(init=False)
    fidelity: float = field(init=False)

    def __post_init__(self):
        self.A = complex(self.A)
        self.zeta = -1j * (self.A - 1.0)
        self.phi_nl = cmath.phase(self.A)
        abs_sq = abs(self.A) ** 2
        if abs_sq > 1.0 + 1e-8:
            raise InvalidStateError(f"|A|^2 = {abs_sq} exceeds 1")
        self.err_sq = min(max(1.0 - abs_sq, 0.0), 1.0)
        self.fidelity = 1.0 - self.err_sq
        if self.purity is not None and not 0.0 < self.purity <= 1.0 + 1e-9:
            raise InvalidStateError(f"Purity {self.purity} outside (0, 1]")

    @property
    def phi_nl_small_zeta(self) -> float:
        """Lowest-order phase estimate Re zeta"""
        return self.zeta.real

    @property
    def err_sq_small_zeta(self) -> float:
        """Lowest-order error estimate 2 Im zeta"""
        return 2.0 * self.zeta.imag

    def to_record(self) -> Dict[str, Any]:
        return {
            "delta": self.delta,
            "phi_nl": self.phi_nl,
            "err_sq": self.err_sq,
            "fidelity": self.fidelity,
            "purity": self.purity if self.purity is not None else float("nan"),
            "phi_h": self.phi_h,
            "err_h": self.err_h,
            "phi_v": self.phi_v,
            "err_v": self.err_v,
            "phi_nl_small_zeta": self.phi_nl_small_zeta,
            "err_sq_small_zeta": self.err_sq_small_zeta,
            "a_real": self.A.real,
            "a_imag": self.A.imag,
        }


@dataclass
class FidelityResult:
    """Outcome of a minimum-fidelity search over pure two-qubit inputs"""

    fidelity: float
    state: np.ndarray
    converged: bool
    evaluations: int = 0
    warnings: List[str] = field(default_factory=list)

    def overlap_with(self, target: np.ndarray) -> float:
        """|<target|state>|^2 of the minimizing state"""
        return float(abs(np.vdot(target, self.state)) ** 2)


@dataclass
class CascadeTrace:
    """Per-step fidelity of a cascade of gates"""

    pmp: bool
    steps: List[int] = field(default_factory=list)
    fidelity: List[float] = field(default_factory=list)
    success_prob: List[float] = field(default_factory=list)
    fit_exponent: Optional[float] = None

    def append(self, n: int, fidelity: float, success_prob: float):
        self.steps.append(n)
        self.fidelity.append(fidelity)
        self.success_prob.append(success_prob)

    @property
    def infidelity(self) -> np.ndarray:
        return 1.0 - np.asarray(self.fidelity)

    def to_dataframe(self) -> pd.DataFrame:
        return pd.DataFrame({
            "n": self.steps,
            "pmp": ["on" if self.pmp else "off"] * len(self.steps),
            "fidelity": self.fidelity,
            "success_prob": self.success_prob,
            "fit_exponent": [self.fit_exponent if self.fit_exponent is not None else float("nan")]
            * len(self.steps),
        })


@dataclass
class OptimizationResult:
    """Optimal bandwidth ratio and detuning for an N-gate cascade"""

    n: float
    r_opt: float
    delta_opt: float
    c: float
    infidelity: float
    fidelity_exact: float

    def to_record(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "r_opt": self.r_opt,
            "delta_opt": self.delta_opt,
            "c": self.c,
            "infidelity": self.infidelity,
            "fidelity_exact": self.fidelity_exact,
        }
