"""Invariant checks run by the ``verify`` command"""

import logging
from typing import Any, Callable, Dict, List, Optional

import numpy as np
import pandas as pd

from ..channel.cascade import optimize_cascade
from ..channel.fidelity import min_gate_fidelity
from ..channel.kraus import primitive_channel, u_phase
from ..exceptions import PhotonGateError
from ..metrics.asymptotics import closed_form_far_detuned, closed_form_weak
from ..metrics.overlap import compute_overlap_A, principal_mode
from ..models.gate_params import GateParams
from ..pmpdev.cavity_loader import CavityLoader, analytic_efficiency, load_efficiency
from ..scattering.kernel import PropagatorKernel
from ..scattering.single_photon import apply_linear_removal, apply_single_scattering, verify_time_reversal
from ..spectral.amplitudes import invert_pulse, make_exponential_mode
from ..spectral.quadrature import build_kgrid

logger = logging.getLogger(__name__)

CHECK_COLUMNS = ["check", "passed", "value", "tolerance"]
EPS_SQ_VALUES = (0.0, 0.01, 0.3)
FAR_DETUNINGS = (20.0, 30.0, 50.0)
WEAK_DETUNINGS = (2.0, 5.0, 10.0)
WEAK_GAMMA = 0.001
SCALING_COUNTS = (1e3, 1e5, 1e7)
SCALING_CONSTANT = 4.82


class ValidationResult:
    """Stores validation results and issues"""

    def __init__(self):
        self.is_valid = True
        self.errors = []
        self.warnings = []
        self.info = []
        self.rows: List[Dict[str, Any]] = []

    def add_error(self, message: str):
        """Add an error (failed check)"""
        self.errors.append(message)
        self.is_valid = False

    def add_warning(self, message: str):
        """Add a warning (non-critical issue)"""
        self.warnings.append(message)

    def add_info(self, message: str):
        """Add informational message"""
        self.info.append(message)

    def record(self, check: str, value: float, tolerance: float):
        """Record a measured deviation; values above the tolerance are errors"""
        passed = bool(np.isfinite(value) and value <= tolerance)
        self.rows.append({"check": check, "passed": passed, "value": float(value), "tolerance": tolerance})
        if passed:
            self.add_info(f"{check}: {value:.3e} <= {tolerance:.1e}")
        else:
            self.add_error(f"{check}: deviation {value:.3e} exceeds {tolerance:.1e}")

    def to_dataframe(self) -> pd.DataFrame:
        return pd.DataFrame(self.rows, columns=CHECK_COLUMNS)

    def get_summary(self) -> Dict[str, Any]:
        """Get validation summary"""
        return {
            "is_valid": self.is_valid,
            "error_count": len(self.errors),
            "warning_count": len(self.warnings),
            "errors": self.errors,
            "warnings": self.warnings,
            "info": self.info
        }


class InvariantSuite:
    """Runs the enabled invariant checks against one base parameter point"""

    def __init__(self, config: Dict[str, Any], params: GateParams, resolution: int = 512, cutoff: float = 40.0,
                 seed: int = 0, search: Optional[Dict[str, int]] = None):
        """
        Initialize the suite

        Args:
            config: Verify configuration from config_loader
            params: Base gate parameters
            resolution: Grid resolution for quadrature checks
            cutoff: Grid cutoff
            seed: Seed for the randomized fidelity search
            search: Fidelity search budget (starts, max_iterations)
        """
        self.config = config
        self.seed = seed
        self.search = search or {}
        self.params = params
        self.resolution = resolution
        self.cutoff = cutoff
        self.result = ValidationResult()

    def _checks(self) -> Dict[str, Callable[[], float]]:
        return {
            "normalization": self._normalization,
            "inversion_involution": self._inversion_involution,
            "time_reversal": self._time_reversal,
            "linear_removal": self._linear_removal,
            "mirror_symmetry": self._mirror_symmetry,
            "far_detuned": self._far_detuned,
            "weak_excitation": self._weak_excitation,
            "kraus_completeness": self._kraus_completeness,
            "min_fidelity": self._min_fidelity,
            "scaling_law": self._scaling_law,
            "pmp_loading": self._pmp_loading,
        }

    def run(self) -> ValidationResult:
        """
        Run every enabled check

        Returns:
            ValidationResult with one row per check
        """
        self.result = ValidationResult()
        checks = self._checks()
        for name, settings in self.config.get("checks", {}).items():
            if not settings.get("enabled", True):
                self.result.add_info(f"{name}: skipped")
                continue
            if name not in checks:
                self.result.add_warning(f"Unknown check '{name}' in verify config")
                continue
            logger.info(f"Running check: {name}")
            try:
                value = checks[name]()
            except PhotonGateError as e:
                logger.error(f"Check {name} raised: {e}")
                self.result.rows.append(
                    {"check": name, "passed": False, "value": float("nan"), "tolerance": settings["tolerance"]}
                )
                self.result.add_error(f"{name}: {e}")
                continue
            self.result.record(name, value, settings["tolerance"])

        summary = self.result.get_summary()
        logger.info(f"Verification finished: {len(self.result.rows)} checks, {summary['error_count']} failed")
        return self.result

    def _grid(self, params: GateParams = None):
        return build_kgrid(params or self.params, resolution=self.resolution, cutoff=self.cutoff)

    def _normalization(self) -> float:
        psi = principal_mode(self.params)
        return abs(psi.sample(self._grid()).norm_squared() - 1.0)

    def _inversion_involution(self) -> float:
        psi = principal_mode(self.params)
        twice = invert_pulse(invert_pulse(psi, self.params.k0), self.params.k0)
        nodes = self._grid().nodes
        return float(np.max(np.abs(twice.evaluate(nodes) - psi.evaluate(nodes))))

    def _time_reversal(self) -> float:
        return verify_time_reversal(principal_mode(self.params), self.params, grid=self._grid())

    def _linear_removal(self) -> float:
        kernel = PropagatorKernel(self.params)
        psi = principal_mode(self.params)
        restored = apply_linear_removal(apply_single_scattering(psi, kernel), kernel)
        nodes = self._grid().nodes
        return float(np.max(np.abs(restored.evaluate(nodes) - psi.evaluate(nodes))))

    def _overlap(self, params: GateParams) -> complex:
        return compute_overlap_A(params, resolution=self.resolution, cutoff=self.cutoff)

    def _mirror_symmetry(self) -> float:
        return abs(self._overlap(self.params.mirrored()) - np.conj(self._overlap(self.params)))

    def _relative_asymptotic_error(self, points: List[GateParams], closed_form) -> float:
        worst = 0.0
        for params in points:
            A = self._overlap(params)
            phi_nl, err_sq = np.angle(A), 1.0 - abs(A) ** 2
            expected_phi, expected_err = closed_form(params)
            worst = max(worst, abs(phi_nl / expected_phi - 1.0), abs(err_sq / expected_err - 1.0))
        return worst

    def _far_detuned(self) -> float:
        points = [GateParams.symmetric(gamma=1.0, delta=d) for d in FAR_DETUNINGS]
        return self._relative_asymptotic_error(points, closed_form_far_detuned)

    def _weak_excitation(self) -> float:
        points = [GateParams.symmetric(gamma=WEAK_GAMMA, delta=d) for d in WEAK_DETUNINGS]
        return self._relative_asymptotic_error(points, closed_form_weak)

    def _kraus_completeness(self) -> float:
        identity = np.eye(4)
        return max(
            float(np.max(np.abs(primitive_channel(eps_sq, np.pi).completeness() - identity)))
            for eps_sq in EPS_SQ_VALUES
        )

    def _min_fidelity(self) -> float:
        worst = 0.0
        for eps_sq in EPS_SQ_VALUES:
            outcome = min_gate_fidelity(primitive_channel(eps_sq, 0.5), u_phase(0.5), seed=self.seed, **self.search)
            worst = max(worst, abs(outcome.fidelity - (1.0 - eps_sq)))
        return worst

    def _scaling_law(self) -> float:
        return max(abs(optimize_cascade(n).c - SCALING_CONSTANT) for n in SCALING_COUNTS)

    def _pmp_loading(self) -> float:
        k0, gamma = self.params.k0, self.params.gamma
        drive = invert_pulse(make_exponential_mode(k0, gamma), k0)
        worst = 0.0
        for ratio, detuning in ((1.0, 0.0), (2.0, 0.0), (1.0, 1.0)):
            loader = CavityLoader(omega_cav=k0 + detuning * gamma, gamma_cav=ratio * gamma)
            measured = load_efficiency(drive, loader)
            expected = analytic_efficiency(k0, gamma, loader.omega_cav, loader.gamma_cav)
            worst = max(worst, abs(measured - expected))
        return worst

