#!/usr/bin/env python3
"""
Relations harness: identity checks and named suites.
"""

from .relation_validator import RelationValidator, guarded_check
from .suites import (
    SUITES,
    build_suite,
    contraction_suite,
    conventions_suite,
    default_suite,
    override_params,
    quick_suite,
)

__all__ = [
    'RelationValidator',
    'guarded_check',
    'SUITES',
    'build_suite',
    'contraction_suite',
    'conventions_suite',
    'default_suite',
    'override_params',
    'quick_suite',
]
