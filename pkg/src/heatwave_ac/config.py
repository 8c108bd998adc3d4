"""
Configuration module for heatwave-ac.

Handles environment variable loading and logging setup. Scenario parameters
live in the TOML run config (see ``heatwave_ac.ingest.load_config``).
"""

import logging
import os
import sys
from typing import Optional, TextIO

from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

# Default configuration values
DEFAULT_CONFIG = {
    "HEATWAVE_AC_LOG_LEVEL": "INFO",
    "HEATWAVE_AC_THREADS": "0",
    "HEATWAVE_AC_CHUNK_SIZE": "4096",
}


def get_config(key: str, default: Optional[str] = None) -> str:
    """
    Get a configuration value from environment variables.

    Args:
        key: Configuration key
        default: Default value if not found in environment

    Returns:
        Configuration value
    """
    return os.environ.get(key, default or DEFAULT_CONFIG.get(key, ""))


def get_int_config(key: str) -> int:
    """Get an integer configuration value, falling back to the default on junk."""
    raw = get_config(key)
    try:
        return int(raw)
    except ValueError:
        logging.getLogger(__name__).warning(
            f"Ignoring non-integer {key}={raw!r}, using {DEFAULT_CONFIG[key]}"
        )
        return int(DEFAULT_CONFIG[key])


def get_log_level() -> int:
    """
    Get the configured log level.

    Returns:
        Log level as a logging module constant
    """
    level_name = get_config("HEATWAVE_AC_LOG_LEVEL", "INFO").upper()
    level_map = {
        "DEBUG": logging.DEBUG,
        "INFO": logging.INFO,
        "WARNING": logging.WARNING,
        "ERROR": logging.ERROR,
        "CRITICAL": logging.CRITICAL,
    }
    return level_map.get(level_name, logging.INFO)


def resolve_threads(requested: int) -> int:
    """Turn a ``--threads`` value into a worker count (0 means one per CPU)."""
    if requested < 0:
        raise ValueError("threads must be 0 or greater")
    if requested == 0:
        return os.cpu_count() or 1
    return requested


def configure_logging(stream: TextIO = sys.stderr) -> None:
    """Configure logging based on environment variables.

    Standard output is reserved for machine-readable results, so log records
    always go to standard error.
    """
    logging.basicConfig(
        level=get_log_level(),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=stream,
    )
