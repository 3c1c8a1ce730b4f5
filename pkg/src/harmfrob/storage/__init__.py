#!/usr/bin/env python3
"""
Persistent value cache for harmonic-frobenius.
"""

from .cache_manager import CacheManager

__all__ = [
    'CacheManager',
]
