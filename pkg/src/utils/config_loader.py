"""Configuration loader for simulation defaults and verification settings"""

import json
import os
from pathlib import Path
from typing import Dict, Any, Optional
import logging

import yaml
from dotenv import load_dotenv

logger = logging.getLogger(__name__)

OUTPUT_DIR_ENV = "PHOTON_GATE_OUTPUT_DIR"


class ConfigLoader:
    """Loads and manages configuration files for the simulator"""

    def __init__(self, config_dir: str = "config"):
        """
        Initialize the config loader

        Args:
            config_dir: Directory containing configuration files
        """
        self.config_dir = Path(config_dir)
        self._simulation_config = None
        self._verify_config = None

    def load_simulation_config(self, config_file: str = "simulation_config.json") -> Dict[str, Any]:
        """
        Load numerical defaults (grid, tolerances, cascade and optimizer settings)

        Values present in the file override the built-in defaults section by section.

        Args:
            config_file: Name of the simulation configuration file

        Returns:
            Dictionary of simulation settings
        """
        if self._simulation_config is None:
            loaded = self._read(config_file)
            defaults = self._get_default_simulation_config()
            if loaded is None:
                logger.warning(f"Simulation config not found in {self.config_dir}. Using defaults.")
                loaded = {}
            self._simulation_config = _merge(defaults, loaded)

        return self._simulation_config

    def load_verify_config(self, config_file: str = "verify_config.json") -> Dict[str, Any]:
        """
        Load the list of invariant checks run by the verify command

        Args:
            config_file: Name of the verification configuration file

        Returns:
            Dictionary with a ``checks`` mapping of check name to settings
        """
        if self._verify_config is None:
            loaded = self._read(config_file)
            if loaded is None:
                logger.warning(f"Verify config not found in {self.config_dir}. Using defaults.")
                loaded = {}
            self._verify_config = _merge(self._get_default_verify_config(), loaded)

        return self._verify_config

    def default_output_dir(self) -> str:
        """Output directory from the environment (``.env`` honoured), else ``output``"""
        load_dotenv()
        return os.getenv(OUTPUT_DIR_ENV, "output")

    def _read(self, config_file: str) -> Optional[Dict[str, Any]]:
        config_path = self.config_dir / config_file
        if not config_path.exists():
            return None

        with open(config_path, 'r', encoding='utf-8') as f:
            if config_path.suffix in (".yaml", ".yml"):
                return yaml.safe_load(f) or {}
            return json.load(f)

    def _get_default_simulation_config(self) -> Dict[str, Any]:
        """Returns default simulation configuration"""
        return {
            "grid": {
                "resolution": 512,
                "cutoff": 40.0
            },
            "tolerances": {
                "convergence": 1e-6
            },
            "time_domain": {
                "window_decay_lengths": 24.0
            },
            "cascade": {
                "steps": 20,
                "fit_range": None
            },
            "optimizer": {
                "r_min": 0.1,
                "r_max": 50.0,
                "tolerance": 1e-8
            },
            "fidelity_search": {
                "starts": 24,
                "max_iterations": 500
            },
            "pmp_load": {
                "gamma_ratios": [0.5, 1.0, 2.0],
                "detunings": [-2.0, -1.0, 0.0, 1.0, 2.0]
            }
        }

    def _get_default_verify_config(self) -> Dict[str, Any]:
        """Returns default verification configuration"""
        return {
            "checks": {
                "normalization": {"enabled": True, "tolerance": 1e-6},
                "inversion_involution": {"enabled": True, "tolerance": 1e-12},
                "time_reversal": {"enabled": True, "tolerance": 1e-9},
                "linear_removal": {"enabled": True, "tolerance": 1e-12},
                "mirror_symmetry": {"enabled": True, "tolerance": 1e-8},
                "far_detuned": {"enabled": True, "tolerance": 0.05},
                "weak_excitation": {"enabled": True, "tolerance": 0.02},
                "kraus_completeness": {"enabled": True, "tolerance": 1e-12},
                "min_fidelity": {"enabled": True, "tolerance": 1e-6},
                "scaling_law": {"enabled": True, "tolerance": 0.05},
                "pmp_loading": {"enabled": True, "tolerance": 1e-3}
            }
        }

    def reload_configs(self):
        """Reload all configurations from disk"""
        self._simulation_config = None
        self._verify_config = None
        logger.info("All configurations reloaded")


def _merge(defaults: Dict[str, Any], overrides: Dict[str, Any]) -> Dict[str, Any]:
    merged = dict(defaults)
    for key, value in overrides.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged
