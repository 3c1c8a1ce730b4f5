#!/usr/bin/env python3
"""
Tests for the symbolic expansion of har_{p^alpha m} in m, har_m and har_{p^alpha}.
"""

from fractions import Fraction

import pytest

from harmfrob.core.arith import bernoulli, binom_general, rational_valuation
from harmfrob.core.power_sums import (
    cutoff_for_precision,
    denominator_margin,
    expand_sigma,
    extract_adjoint,
    max_valuation_below,
)
from harmfrob.core.words import CompositionIndex
from harmfrob.errors import CutoffTooSmallError


@pytest.mark.parametrize("parts", [(1,), (3,), (2, 1), (1, 2), (1, 1, 1)])
def test_exact_at_m_equal_one(parts, harmonic_engine):
    index = CompositionIndex(parts)
    expansion = expand_sigma(index, index.weight + 1)
    for prime in (3, 5):
        exact = harmonic_engine.har(prime, index).value
        assert expansion.evaluate_exact(prime, 1, 1, harmonic_engine) == exact


@pytest.mark.parametrize("parts,cutoff,m_max", [((2,), 6, 8), ((1,), 5, 12), ((2, 1), 5, 6),
                                                 ((1, 2), 5, 6)])
def test_truncation_within_tail_bound(parts, cutoff, m_max, harmonic_engine):
    index = CompositionIndex(parts)
    expansion = expand_sigma(index, cutoff)
    for m in range(1, m_max + 1):
        exact = harmonic_engine.har(5 * m, index).value
        approx = expansion.evaluate_exact(5, 1, m, harmonic_engine)
        v = rational_valuation(exact - approx, 5)
        assert v is None or v >= expansion.tail_bound(5, m)


def test_grading():
    for parts, cutoff in [((2, 1), 6), ((1, 1, 1), 5), ((3,), 7)]:
        assert expand_sigma(CompositionIndex(parts), cutoff).grading_violations() == []


def test_cutoff_below_weight():
    with pytest.raises(CutoffTooSmallError):
        expand_sigma(CompositionIndex((2, 2)), 3)


def test_expansion_is_memoized():
    index = CompositionIndex((2, 1))
    assert expand_sigma(index, 5) is expand_sigma(index, 5)


def test_render_and_dict():
    expansion = expand_sigma(CompositionIndex((1,)), 2)
    data = expansion.to_dict()
    assert data['index'] == "1"
    assert data['weight_cutoff'] == 2
    assert len(data['terms']) == len(expansion)
    assert all(term.render().startswith("m^") for term in expansion)


def test_depth_one_adjoint_combination():
    """Entry (b, (n)) collects C(-n, l) B_b^l har_q(n + l) for l >= b - 1."""
    n, cutoff = 2, 6
    combos = extract_adjoint(expand_sigma(CompositionIndex((n,)), cutoff))
    assert not combos.get((0, CompositionIndex((n,))))
    expected = {}
    for l in range(0, cutoff - n + 1):
        c = binom_general(-n, l) * bernoulli(l)
        if c:
            expected[(CompositionIndex((n + l,)),)] = c
    assert combos[(1, CompositionIndex((n,)))] == expected
    assert expected == {
        (CompositionIndex((2,)),): Fraction(1),
        (CompositionIndex((3,)),): Fraction(1),
        (CompositionIndex((4,)),): Fraction(1, 2),
        (CompositionIndex((6,)),): Fraction(-1, 6),
    }


def test_margins():
    assert max_valuation_below(5, 5) == 0
    assert max_valuation_below(5, 6) == 1
    assert max_valuation_below(5, 26) == 2
    assert denominator_margin(5, 1, 2) == 1
    assert denominator_margin(5, 1, 3) == 2
    assert denominator_margin(5, 2, 10) == 3 * 2
    index = CompositionIndex((2, 1))
    cutoff = cutoff_for_precision(5, index, 1, 6)
    assert cutoff >= 1 + index.weight
    assert cutoff + 1 - denominator_margin(5, 2, cutoff) >= 6
