"""Logging configuration for the photon gate simulator"""

import logging
import sys
from pathlib import Path
from datetime import datetime
from typing import Optional


def setup_logger(
    name: str = "photon_gate",
    log_level: int = logging.INFO,
    log_dir: Optional[str] = "logs",
    console_output: bool = True
) -> logging.Logger:
    """
    Set up logger with file and console handlers

    Child loggers created with ``logging.getLogger(__name__)`` inside ``src``
    propagate to the ``src`` logger, which is configured alongside ``name``.

    Args:
        name: Logger name
        log_level: Logging level
        log_dir: Directory for log files (None disables the file handler)
        console_output: Whether to output to console

    Returns:
        Configured logger instance
    """
    logger = logging.getLogger(name)
    logger.setLevel(log_level)
    logging.getLogger("src").setLevel(log_level)

    # Avoid duplicate handlers
    if logger.handlers:
        return logger

    formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )

    handlers = []
    if log_dir is not None:
        log_path = Path(log_dir)
        log_path.mkdir(parents=True, exist_ok=True)

        timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
        file_handler = logging.FileHandler(
            log_path / f"photon_gate_{timestamp}.log",
            encoding='utf-8'
        )
        handlers.append(file_handler)

    if console_output:
        # stderr keeps stdout free for artifact paths
        handlers.append(logging.StreamHandler(sys.stderr))

    for handler in handlers:
        handler.setLevel(log_level)
        handler.setFormatter(formatter)
        logger.addHandler(handler)
        logging.getLogger("src").addHandler(handler)

    return logger
