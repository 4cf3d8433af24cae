"""
Structured logging for the pgraph library and CLI.

Usage:
    from common.logging import setup_logging, get_logger

    setup_logging()  # JSON records on stderr
    logger = get_logger(__name__)
    logger.info("Scan finished", extra={"kernel": "ineq2", "points": 2004003})

Reports go to stdout, so every log record is written to stderr. Library
modules only call get_logger; the CLI calls setup_logging once.
"""

import logging
import sys
from typing import Optional

import pythonjsonlogger.json

from common.environments import get_log_format, get_log_level

SERVICE_NAME = "pgraph"

logger = logging.getLogger(SERVICE_NAME)


def setup_logging(level: Optional[str] = None, format_type: Optional[str] = None) -> logging.Logger:
    """
    Configure the service logger.

    Args:
        level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL); defaults to PGRAPH_LOG_LEVEL
        format_type: 'json' for structured records, 'text' for human-readable lines;
            defaults to PGRAPH_LOG_FORMAT

    Returns:
        The configured service logger
    """
    level = level or get_log_level()
    format_type = format_type or get_log_format()

    logger.setLevel(getattr(logging, level.upper(), logging.INFO))
    for handler in logger.handlers[:]:
        logger.removeHandler(handler)

    if format_type == "json":
        formatter: logging.Formatter = pythonjsonlogger.json.JsonFormatter(
            fmt="%(asctime)s %(name)s %(levelname)s %(message)s", datefmt="%Y-%m-%dT%H:%M:%S%z"
        )
    else:
        formatter = logging.Formatter(
            fmt="%(asctime)s [%(levelname)s] %(name)s: %(message)s", datefmt="%Y-%m-%d %H:%M:%S"
        )

    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(formatter)
    logger.addHandler(handler)
    return logger


def get_logger(name: str) -> logging.Logger:
    """Logger nested under the service logger, so setup_logging configures it."""
    return logging.getLogger(f"{SERVICE_NAME}.{name}")


__all__ = ["setup_logging", "get_logger"]
