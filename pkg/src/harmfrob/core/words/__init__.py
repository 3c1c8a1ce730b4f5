#!/usr/bin/env python3
"""
Word algebra over {e0, e1}.

This package provides words and composition indices, truncated
noncommutative series, valuation profiles, and the shuffle, stuffle and
Ihara operations on them.
"""

from .word import EMPTY_INDEX, EMPTY_WORD, CompositionIndex, Word, compositions
from .series import NcSeries, ValuationProfile
from .operations import (
    adjoint_e1,
    all_words,
    antipode,
    depth_profile,
    ihara,
    ihara_inverse,
    is_grouplike,
    lie_bracket,
    limit_e0,
    pr_n,
    s_y,
    series_exp,
    series_inverse,
    series_log,
    series_mul,
    shft_star,
    shft_star_series,
    shuffle,
    shuffle_defects,
    shuffle_series,
    stuffle,
    substitute_e1,
    tau_scale,
    valuation_profile,
)

__all__ = [
    'EMPTY_INDEX',
    'EMPTY_WORD',
    'CompositionIndex',
    'Word',
    'compositions',
    'NcSeries',
    'ValuationProfile',
    'adjoint_e1',
    'all_words',
    'antipode',
    'depth_profile',
    'ihara',
    'ihara_inverse',
    'is_grouplike',
    'lie_bracket',
    'limit_e0',
    'pr_n',
    's_y',
    'series_exp',
    'series_inverse',
    'series_log',
    'series_mul',
    'shft_star',
    'shft_star_series',
    'shuffle',
    'shuffle_defects',
    'shuffle_series',
    'stuffle',
    'substitute_e1',
    'tau_scale',
    'valuation_profile',
]
