#!/usr/bin/env python3
"""
Exact and p-adic arithmetic.
"""

from .padic import PAdic, integer_valuation, padic_arithmetic, split_rational
from .rational import bernoulli, binom_general, rational_valuation
from .rings import PAdicField, RationalField, default_working_precision

__all__ = [
    'PAdic',
    'integer_valuation',
    'padic_arithmetic',
    'split_rational',
    'bernoulli',
    'binom_general',
    'rational_valuation',
    'PAdicField',
    'RationalField',
    'default_working_precision',
]
