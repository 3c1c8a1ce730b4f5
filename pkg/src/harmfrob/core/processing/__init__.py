#!/usr/bin/env python3
"""
Parallel work queue for checks and sweeps.
"""

from .parallel_processor import ParallelProcessor

__all__ = [
    'ParallelProcessor',
]
