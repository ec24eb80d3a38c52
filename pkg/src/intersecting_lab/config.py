"""
Configuration management for intersecting-lab

Loads configuration from environment variables with sensible defaults for
the search guards, the default seed/trial counts of the theorem suites and
the log destination.

All variables use the INTERSECTING_LAB_ prefix, e.g.
INTERSECTING_LAB_MAX_MEMBERS=8000 or INTERSECTING_LAB_LOG_LEVEL=DEBUG.
"""

import logging
import os
from pathlib import Path
from typing import TypedDict

from dotenv import load_dotenv

logger = logging.getLogger(__name__)

ENV_PREFIX = "INTERSECTING_LAB_"

# Load environment variables from .env file
# Try multiple paths for .env file
env_loaded = False
for env_path in [
    Path.cwd() / ".env",
    Path(__file__).parent.parent.parent / ".env",
    Path.home() / ".env",
]:
    if env_path.exists():
        logger.info(f"Loading environment from: {env_path}")
        load_dotenv(env_path)
        env_loaded = True
        break

if not env_loaded:
    logger.debug("No .env file found, using system environment variables only")


class SearchGuards(TypedDict):
    """Blowup guards shared by enumeration and search"""

    # Largest family handed to the branch-and-bound search
    max_members: int
    # Largest family any enumeration may materialize
    max_enumeration: int
    # Largest n for power_set (2^n members)
    max_power_set_n: int
    # Largest graph for the maximal-independent-set sweep behind mu(G)
    mu_max_vertices: int


class LabConfig(TypedDict):
    """Complete lab configuration"""

    log_file: str
    log_level: str
    default_seed: int
    default_trials: int
    guards: SearchGuards


DEFAULT_GUARDS: SearchGuards = {
    "max_members": 5000,
    "max_enumeration": 10**7,
    "max_power_set_n": 20,
    "mu_max_vertices": 24,
}


def _get_bool_env(key: str, default: bool) -> bool:
    """Get boolean environment variable"""
    value = os.getenv(key, str(default)).lower()
    return value in ("true", "1", "yes", "on")


def _get_int_env(key: str, default: int) -> int:
    """Get integer environment variable"""
    value = os.getenv(key)
    if value is None:
        return default
    try:
        return int(value)
    except ValueError:
        logger.warning(f"Ignoring non-integer value for {key}: {value!r}")
        return default


def load_search_guards() -> SearchGuards:
    """
    Load search guards from INTERSECTING_LAB_* environment variables.

    Returns:
        SearchGuards with every limit set

    Raises:
        ValueError: If a guard is negative
    """
    guards: SearchGuards = {
        "max_members": _get_int_env(f"{ENV_PREFIX}MAX_MEMBERS", DEFAULT_GUARDS["max_members"]),
        "max_enumeration": _get_int_env(
            f"{ENV_PREFIX}MAX_ENUMERATION", DEFAULT_GUARDS["max_enumeration"]
        ),
        "max_power_set_n": _get_int_env(
            f"{ENV_PREFIX}MAX_POWER_SET_N", DEFAULT_GUARDS["max_power_set_n"]
        ),
        "mu_max_vertices": _get_int_env(
            f"{ENV_PREFIX}MU_MAX_VERTICES", DEFAULT_GUARDS["mu_max_vertices"]
        ),
    }

    for key, value in guards.items():
        if value < 0:
            raise ValueError(f"Guard '{key}' must be non-negative, got {value}")

    return guards


def load_lab_config() -> LabConfig:
    """
    Load complete lab configuration from environment variables.

    Returns:
        LabConfig with all settings
    """
    config: LabConfig = {
        "log_file": os.getenv(f"{ENV_PREFIX}LOG_FILE", "logs/intersecting-lab.log"),
        "log_level": os.getenv(f"{ENV_PREFIX}LOG_LEVEL", "INFO").upper(),
        "default_seed": _get_int_env(f"{ENV_PREFIX}SEED", 20240601),
        "default_trials": _get_int_env(f"{ENV_PREFIX}TRIALS", 10_000),
        "guards": load_search_guards(),
    }

    if config["default_trials"] < 0:
        raise ValueError(
            f"{ENV_PREFIX}TRIALS must be non-negative, got {config['default_trials']}"
        )

    return config


def log_level_value(config: LabConfig) -> int:
    """Map the configured level name onto a logging level, INFO when unknown"""
    level = logging.getLevelName(config["log_level"])
    return level if isinstance(level, int) else logging.INFO


def json_errors_enabled() -> bool:
    """Whether CLI errors are always emitted as JSON, whatever --format says"""
    return _get_bool_env(f"{ENV_PREFIX}JSON_ERRORS", False)
