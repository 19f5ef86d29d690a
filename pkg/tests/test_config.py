"""Test configuration loading and logger setup"""

import logging

from src.utils.config_loader import ConfigLoader
from src.utils.logger import setup_logger


class TestConfigLoader:
    """Test configuration defaults and overrides"""

    def test_missing_directory_uses_defaults(self, tmp_path, caplog):
        loader = ConfigLoader(str(tmp_path / "absent"))
        with caplog.at_level(logging.WARNING):
            config = loader.load_simulation_config()
        assert config["grid"]["resolution"] == 512
        assert config["optimizer"]["r_max"] == 50.0
        assert "Using defaults" in caplog.text

    def test_yaml_override_merges(self, tmp_path):
        (tmp_path / "simulation_config.yaml").write_text("grid:\n  resolution: 1024\n")
        config = ConfigLoader(str(tmp_path)).load_simulation_config("simulation_config.yaml")
        assert config["grid"]["resolution"] == 1024
        assert config["grid"]["cutoff"] == 40.0

    def test_repository_config(self):
        """Test the shipped configuration enables every check"""
        checks = ConfigLoader("config").load_verify_config()["checks"]
        assert all(settings["enabled"] for settings in checks.values())
        assert "scaling_law" in checks

    def test_reload(self, tmp_path):
        path = tmp_path / "simulation_config.json"
        path.write_text('{"cascade": {"steps": 5}}')
        loader = ConfigLoader(str(tmp_path))
        assert loader.load_simulation_config()["cascade"]["steps"] == 5
        path.write_text('{"cascade": {"steps": 7}}')
        assert loader.load_simulation_config()["cascade"]["steps"] == 5
        loader.reload_configs()
        assert loader.load_simulation_config()["cascade"]["steps"] == 7

    def test_default_output_dir(self, monkeypatch, tmp_path):
        monkeypatch.delenv("PHOTON_GATE_OUTPUT_DIR", raising=False)
        monkeypatch.chdir(tmp_path)
        assert ConfigLoader().default_output_dir() == "output"


class TestLogger:
    """Test logger setup"""

    def test_no_duplicate_handlers(self):
        first = setup_logger(name="photon_gate_test", log_dir=None)
        count = len(first.handlers)
        second = setup_logger(name="photon_gate_test", log_dir=None)
        assert second is first
        assert len(second.handlers) == count

    def test_file_handler(self, tmp_path):
        logger = setup_logger(name="photon_gate_file_test", log_dir=str(tmp_path), console_output=False)
        logger.info("hello")
        for handler in logger.handlers:
            handler.flush()
        assert any(p.suffix == ".log" for p in tmp_path.iterdir())
