#!/usr/bin/env python3
"""
Configuration utility functions for harmonic-frobenius.

RunConfig is resolved from defaults, an optional JSON file, HARMFROB_*
environment variables (a .env file is honoured) and explicit overrides,
each layer overriding the previous one.
"""

import json
import logging
import os
from pathlib import Path
from typing import Any, Dict, Mapping, Optional

from dotenv import load_dotenv

from harmfrob.errors import ConfigError
from harmfrob.models import RunConfig

logger = logging.getLogger(__name__)

ENV_PREFIX = "HARMFROB_"


def _int_list(text: str):
    return [int(piece) for piece in text.split(",") if piece.strip()]


# environment variable suffix -> (RunConfig field, parser)
ENV_FIELDS: Dict[str, Any] = {
    'CACHE_DIR': ('cache_dir', str),
    'PRECISION': ('precision', int),
    'SEED': ('seed', int),
    'MAX_WORKERS': ('max_workers', int),
    'FORMAT': ('output_format', str),
    'PRIMES': ('primes', _int_list),
    'ALPHAS': ('alphas', _int_list),
    'WEIGHT_CUTOFF': ('weight_cutoff', int),
    'DEPTH_CUTOFF': ('depth_cutoff', int),
    'TAIL_MARGIN': ('tail_margin', int),
}


def load_config(config_path: str) -> RunConfig:
    """
    Load configuration from a JSON file.

    Args:
        config_path: Path to configuration file

    Returns:
        RunConfig object

    Raises:
        ConfigError: if the file is missing, not JSON, or invalid
    """
    try:
        with open(config_path, 'r') as f:
            config_dict = json.load(f)
        return RunConfig.from_dict(config_dict)
    except (OSError, json.JSONDecodeError, ValueError, TypeError) as e:
        raise ConfigError(f"cannot load config {config_path}: {e}") from e


def save_config(config: RunConfig, config_path: str) -> None:
    """
    Save configuration to a JSON file.

    Args:
        config: RunConfig object
        config_path: Path to save configuration
    """
    with open(config_path, 'w') as f:
        json.dump(config.to_dict(), f, indent=2, sort_keys=True)
    logger.debug("saved config to %s", config_path)


def config_from_env(environ: Optional[Mapping[str, str]] = None,
                    dotenv: bool = True) -> Dict[str, Any]:
    """
    Read HARMFROB_* variables into RunConfig field overrides.

    Args:
        environ: Mapping to read instead of os.environ
        dotenv: Load a .env file into os.environ first

    Returns:
        Dictionary of field overrides

    Raises:
        ConfigError: if a variable does not parse
    """
    if environ is None:
        if dotenv:
            load_dotenv()
        environ = os.environ
    overrides: Dict[str, Any] = {}
    for suffix, (field_name, parse) in ENV_FIELDS.items():
        raw = environ.get(ENV_PREFIX + suffix)
        if raw is None or raw == "":
            continue
        try:
            overrides[field_name] = parse(raw)
        except ValueError as e:
            raise ConfigError(f"bad value {raw!r} for {ENV_PREFIX + suffix}: {e}") from e
    if overrides:
        logger.debug("environment overrides: %s", sorted(overrides))
    return overrides


def merge_configs(base_config: RunConfig, override_dict: Dict[str, Any]) -> RunConfig:
    """
    Merge a base configuration with override values.

    Args:
        base_config: Base configuration
        override_dict: Override values; None values are ignored

    Returns:
        New RunConfig with merged values

    Raises:
        ConfigError: if the merged configuration is invalid
    """
    base_dict = base_config.to_dict()
    base_dict.update({k: v for k, v in override_dict.items() if v is not None})
    try:
        return RunConfig.from_dict(base_dict)
    except (ValueError, TypeError) as e:
        raise ConfigError(str(e)) from e


def resolve_config(config_path: Optional[str] = None,
                   overrides: Optional[Dict[str, Any]] = None,
                   environ: Optional[Mapping[str, str]] = None) -> RunConfig:
    """
    Resolve the run configuration: defaults < file < environment < overrides.

    Args:
        config_path: Optional JSON config file
        overrides: Explicit values, typically from CLI flags
        environ: Environment mapping, os.environ by default

    Returns:
        RunConfig
    """
    config = load_config(config_path) if config_path else RunConfig()
    config = merge_configs(config, config_from_env(environ))
    if overrides:
        config = merge_configs(config, overrides)
    if config.cache_dir:
        config.cache_dir = str(Path(config.cache_dir).expanduser())
    return config
