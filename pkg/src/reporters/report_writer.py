"""Artifact writer for tables produced by the simulator"""

import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, List

import pandas as pd

from ..models.run_config import RunConfig

logger = logging.getLogger(__name__)

CONFIG_PREFIX = "# config: "
FLOAT_FORMAT = "%.12g"


class ReportWriter:
    """Writes result tables as CSV or JSON, each headed by the resolved run configuration"""

    def __init__(self, run_config: RunConfig):
        """
        Initialize the writer

        Args:
            run_config: Configuration echoed into every artifact
        """
        self.run_config = run_config

    def config_line(self) -> str:
        return CONFIG_PREFIX + json.dumps(self.run_config.to_dict(), sort_keys=True)

    def render(self, table: pd.DataFrame) -> str:
        """Artifact text for ``table`` in the configured format"""
        if self.run_config.fmt == "json":
            payload = {"config": self.run_config.to_dict(), "records": _records(table)}
            return json.dumps(payload, sort_keys=True, indent=2) + "\n"
        body = table.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
        return self.config_line() + "\n" + body

    def write(self, table: pd.DataFrame, output_path: str) -> Path:
        """
        Save ``table`` to ``output_path``

        Returns:
            Path of the written file
        """
        output_file = Path(output_path)
        output_file.parent.mkdir(parents=True, exist_ok=True)
        with open(output_file, 'w', encoding='utf-8', newline='') as f:
            f.write(self.render(table))
        logger.info(f"Wrote {len(table)} rows to: {output_file}")
        return output_file


def _records(table: pd.DataFrame) -> List[Dict[str, Any]]:
    records = table.to_dict(orient="records")
    return [{key: _plain(value) for key, value in row.items()} for row in records]


def _plain(value: Any) -> Any:
    """JSON-safe scalar; NaN becomes null"""
    if hasattr(value, "item"):
        value = value.item()
    if isinstance(value, float) and math.isnan(value):
        return None
    return value


def read_config_line(path: str) -> Dict[str, Any]:
    """Configuration echoed on the first line of a CSV artifact"""
    with open(path, 'r', encoding='utf-8') as f:
        first = f.readline().rstrip("\n")
    if not first.startswith(CONFIG_PREFIX):
        raise ValueError(f"{path} does not start with a config line")
    return json.loads(first[len(CONFIG_PREFIX):])
