#!/usr/bin/env python3
"""
Utility modules for harmonic-frobenius.

This package contains:
- Configuration loading and resolution
- Rendering of p-adic values and result tables
"""

from .config_utils import config_from_env, load_config, merge_configs, resolve_config, save_config
from .format_utils import (
    expansion_to_dict,
    format_expansion_text,
    format_padic,
    format_table_text,
    padic_fields,
    write_csv,
    write_json,
    write_rows,
)

__all__ = [
    'config_from_env',
    'load_config',
    'merge_configs',
    'resolve_config',
    'save_config',
    'expansion_to_dict',
    'format_expansion_text',
    'format_padic',
    'format_table_text',
    'padic_fields',
    'write_csv',
    'write_json',
    'write_rows',
]
