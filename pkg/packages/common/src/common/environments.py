#!/usr/bin/env python3
"""
Environment helper for the pgraph project.
Reads configuration from env.local and the process environment.
"""

import os
from functools import cache
from pathlib import Path

from dotenv import load_dotenv

load_dotenv(dotenv_path=(Path(__file__).parents[1] / "env.local"))

LOG_FORMATS = ("json", "text")


def get_env(key: str, required: bool = True, default: str | None = None) -> str | None:
    """Get environment variable or raise exception if not set."""
    value = os.getenv(key, default)
    if required and value is None:
        raise ValueError(f"{key} environment variable not set")
    if value is not None:
        value = value.strip()
    if value in ["", "-"] or value is None:
        return None
    return value


@cache
def get_thread_count() -> int:
    """Upper bound on worker threads, from PGRAPH_THREADS (default 1)."""
    key = "PGRAPH_THREADS"
    value = get_env(key, required=False)
    if value is None:
        return 1
    try:
        threads = int(value)
    except ValueError as e:
        raise ValueError(f"{key} must be a positive integer, got {value!r}") from e
    if threads < 1:
        raise ValueError(f"{key} must be a positive integer, got {threads}")
    return threads


@cache
def get_log_level() -> str:
    """Log level from PGRAPH_LOG_LEVEL (default INFO)."""
    return (get_env("PGRAPH_LOG_LEVEL", required=False) or "INFO").upper()


@cache
def get_log_format() -> str:
    """Log format from PGRAPH_LOG_FORMAT: json (default) or text."""
    key = "PGRAPH_LOG_FORMAT"
    value = (get_env(key, required=False) or "json").lower()
    if value not in LOG_FORMATS:
        raise ValueError(f"{key} must be one of {LOG_FORMATS}, got {value!r}")
    return value

