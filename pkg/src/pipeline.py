"""Command orchestrator for the photon gate simulator"""

import logging
from pathlib import Path
from typing import Any, Callable, Dict, Optional

import pandas as pd

from .channel.cascade import cascade_field, optimize_cascade
from .exceptions import InvalidParameterError, PhotonGateError, ResolutionInsufficientError
from .metrics.overlap import gate_metrics
from .metrics.sweeps import sweep_detuning
from .models.results import CascadeTrace
from .models.run_config import RunConfig
from .pmpdev.cavity_loader import CavityLoader, analytic_efficiency, load_efficiency
from .reporters.report_writer import ReportWriter
from .spectral.amplitudes import invert_pulse, make_exponential_mode
from .utils.config_loader import ConfigLoader
from .utils.logger import setup_logger
from .validators.invariant_suite import InvariantSuite

EXIT_SUCCESS = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_INVALID_INPUT = 2
EXIT_RESOLUTION_INSUFFICIENT = 3

PMP_LOAD_COLUMNS = ["gamma_ratio", "detuning", "efficiency", "analytic"]


class SimulationPipeline:
    """Runs one simulator command and writes its artifact"""

    def __init__(
        self,
        config_dir: str = "config",
        log_level: int = logging.INFO,
        log_dir: Optional[str] = "logs"
    ):
        """
        Initialize the pipeline

        Args:
            config_dir: Directory containing configuration files
            log_level: Logging level
            log_dir: Directory for log files; None logs to the console only
        """
        self.logger = setup_logger(log_level=log_level, log_dir=log_dir)
        self.config_loader = ConfigLoader(config_dir)
        self.simulation_config = self.config_loader.load_simulation_config()
        self.verify_config = self.config_loader.load_verify_config()
        self._verification_passed = True

    def _commands(self) -> Dict[str, Callable[[RunConfig], pd.DataFrame]]:
        return {
            "sweep": self._sweep,
            "metrics": self._metrics,
            "purity": self._purity,
            "cascade": self._cascade,
            "optimize": self._optimize,
            "pmp-load": self._pmp_load,
            "verify": self._verify,
        }

    def output_path(self, run_config: RunConfig) -> Path:
        if run_config.output:
            return Path(run_config.output)
        return Path(self.config_loader.default_output_dir()) / f"{run_config.command}.{run_config.fmt}"

    def run(self, run_config: RunConfig) -> Dict[str, Any]:
        """
        Run the configured command

        Args:
            run_config: Resolved command-line configuration

        Returns:
            Dictionary with the exit code, status, output path and result table
        """
        self.logger.info("=" * 80)
        self.logger.info(f"Starting command: {run_config.command}")
        self.logger.info("=" * 80)

        results = {
            "command": run_config.command,
            "exit_code": EXIT_SUCCESS,
            "status": "pending",
            "output_path": None,
            "table": None,
        }
        self._verification_passed = True

        try:
            table = self._commands()[run_config.command](run_config)
            path = ReportWriter(run_config).write(table, str(self.output_path(run_config)))
            results["table"] = table
            results["output_path"] = str(path)
            if self._verification_passed:
                results["status"] = "success"
            else:
                results["status"] = "verification_failed"
                results["exit_code"] = EXIT_VERIFICATION_FAILED
        except InvalidParameterError as e:
            self.logger.error(f"Invalid input: {e}")
            results["status"] = "invalid_input"
            results["exit_code"] = EXIT_INVALID_INPUT
            results["error"] = str(e)
        except ResolutionInsufficientError as e:
            self.logger.error(f"Resolution insufficient: {e}")
            results["status"] = "resolution_insufficient"
            results["exit_code"] = EXIT_RESOLUTION_INSUFFICIENT
            results["error"] = str(e)
        except PhotonGateError as e:
            self.logger.error(f"Simulation failed: {e}", exc_info=True)
            results["status"] = "error"
            results["exit_code"] = EXIT_VERIFICATION_FAILED
            results["error"] = str(e)

        self.logger.info(f"Command {run_config.command} finished: {results['status']}")
        return results

    def _sweep(self, run_config: RunConfig) -> pd.DataFrame:
        return sweep_detuning(
            run_config.gate_params(),
            run_config.delta_min,
            run_config.delta_max,
            run_config.points,
            resolution=run_config.resolution,
            cutoff=run_config.cutoff,
            include_purity=run_config.include_purity,
        )

    def _metrics(self, run_config: RunConfig) -> pd.DataFrame:
        metrics = gate_metrics(
            run_config.gate_params(),
            resolution=run_config.resolution,
            cutoff=run_config.cutoff,
            include_purity=run_config.include_purity,
            tolerance=self.simulation_config["tolerances"]["convergence"],
        )
        return pd.DataFrame([metrics.to_record()])

    def _purity(self, run_config: RunConfig) -> pd.DataFrame:
        metrics = gate_metrics(
            run_config.gate_params(),
            resolution=run_config.resolution,
            cutoff=run_config.cutoff,
            include_purity=True,
            tolerance=self.simulation_config["tolerances"]["convergence"],
        )
        return pd.DataFrame([{"delta": metrics.delta, "purity": metrics.purity, "fidelity": metrics.fidelity}])

    def _cascade(self, run_config: RunConfig) -> pd.DataFrame:
        fit_range = tuple(run_config.fit_range) if run_config.fit_range else None
        traces = []
        for pmp in (True, False):
            trace: CascadeTrace = cascade_field(
                run_config.gate_params(),
                steps=run_config.steps,
                pmp=pmp,
                resolution=run_config.resolution,
                cutoff=run_config.cutoff,
                fit_range=fit_range,
            )
            traces.append(trace.to_dataframe())
        return pd.concat(traces, ignore_index=True)

    def _optimize(self, run_config: RunConfig) -> pd.DataFrame:
        settings = self.simulation_config["optimizer"]
        rows = [
            optimize_cascade(n, settings["r_min"], settings["r_max"], settings["tolerance"]).to_record()
            for n in run_config.n_values
        ]
        return pd.DataFrame(rows)

    def _pmp_load(self, run_config: RunConfig) -> pd.DataFrame:
        settings = self.simulation_config["pmp_load"]
        k0, gamma = run_config.delta, run_config.gamma
        drive = invert_pulse(make_exponential_mode(k0, gamma), k0)
        window = self.simulation_config["time_domain"]["window_decay_lengths"]
        rows = []
        for ratio in settings["gamma_ratios"]:
            for detuning in settings["detunings"]:
                loader = CavityLoader(
                    omega_cav=k0 + detuning * gamma, gamma_cav=ratio * gamma, window_decay_lengths=window
                )
                rows.append({
                    "gamma_ratio": ratio,
                    "detuning": detuning,
                    "efficiency": load_efficiency(drive, loader),
                    "analytic": analytic_efficiency(k0, gamma, loader.omega_cav, loader.gamma_cav),
                })
        self.logger.info(f"Loaded {len(rows)} cavity configurations")
        return pd.DataFrame(rows, columns=PMP_LOAD_COLUMNS)

    def _verify(self, run_config: RunConfig) -> pd.DataFrame:
        suite = InvariantSuite(
            self.verify_config,
            run_config.gate_params(),
            resolution=run_config.resolution,
            cutoff=run_config.cutoff,
            seed=run_config.seed,
            search=self.simulation_config["fidelity_search"],
        )
        result = suite.run()
        for message in result.errors:
            self.logger.error(message)
        self._verification_passed = result.is_valid
        return result.to_dataframe()
