#!/usr/bin/env python3
"""
harmonic-frobenius: prime harmonic sums, adjoint p-adic multiple zeta
values and the relations between them.
"""

__version__ = "0.1.0"

from harmfrob.errors import HarmFrobError
from harmfrob.models import CheckStatus, IdentityCheck, Report, RunConfig

__all__ = [
    '__version__',
    'HarmFrobError',
    'CheckStatus',
    'IdentityCheck',
    'Report',
    'RunConfig',
]
