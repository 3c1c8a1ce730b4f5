#!/usr/bin/env python3
"""
Adjoint p-adic multiple zeta values and their action on harmonic sums.
"""

from .adjoint_engine import AdjointEngine, defect_report
from .harmonic_action import adjoint_series, circ_har_z, harmonic_generating_series, read_har

__all__ = [
    'AdjointEngine',
    'defect_report',
    'adjoint_series',
    'circ_har_z',
    'harmonic_generating_series',
    'read_har',
]
