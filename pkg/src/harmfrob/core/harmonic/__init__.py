#!/usr/bin/env python3
"""
Multiple harmonic sums.
"""

from .harmonic_engine import HarmonicEngine

__all__ = ['HarmonicEngine']
