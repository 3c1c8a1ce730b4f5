#!/usr/bin/env python3
"""
Power sums and the symbolic harmonic expansion.

This package provides:
- Faulhaber polynomials and the B-coefficients of chain power sums
- Elimination of positive powers from mixed-sign chain sums
- The expansion of har_{p^alpha m} in m, har_m and har_{p^alpha}
- The depth-one iteration between levels
"""

from .polynomials import PolyInM, b_coeff, b_coeff_closed_form, chain_power_sum, power_sum_poly
from .chain_sums import ChainExpansion, ChainSumSpec, eliminate_positive_powers, rewrite_chain
from .sigma_expansion import (
    SigmaExpansion,
    SigmaTerm,
    cutoff_for_precision,
    denominator_margin,
    expand_sigma,
    extract_adjoint,
    max_valuation_below,
)
from .iteration import depth1_truncation, floor_log, iterate_depth1

__all__ = [
    'PolyInM',
    'b_coeff',
    'b_coeff_closed_form',
    'chain_power_sum',
    'power_sum_poly',
    'ChainExpansion',
    'ChainSumSpec',
    'eliminate_positive_powers',
    'rewrite_chain',
    'SigmaExpansion',
    'SigmaTerm',
    'cutoff_for_precision',
    'denominator_margin',
    'expand_sigma',
    'extract_adjoint',
    'max_valuation_below',
    'depth1_truncation',
    'floor_log',
    'iterate_depth1',
]
