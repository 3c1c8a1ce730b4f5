#!/usr/bin/env python3
"""
Tests for Faulhaber polynomials, chain power sums, the elimination of
positive powers and the depth-one level iteration.
"""

from fractions import Fraction
from itertools import combinations

import pytest
from sympy import Matrix, Rational

from harmfrob.core.arith import PAdic
from harmfrob.core.power_sums import (
    ChainSumSpec,
    b_coeff,
    b_coeff_closed_form,
    chain_power_sum,
    depth1_truncation,
    eliminate_positive_powers,
    floor_log,
    iterate_depth1,
    power_sum_poly,
    rewrite_chain,
)
from harmfrob.core.words import CompositionIndex


def _chain_brute(exponents, m):
    inner_first = exponents[::-1]
    total = Fraction(0)
    for chain in combinations(range(0, m), len(inner_first)):
        term = Fraction(1)
        for u, e in zip(chain, inner_first):
            term *= Fraction(u) ** e
        total += term
    return total


def _vandermonde_coefficients(exponents):
    """Solve for the polynomial through the brute-force values, with sympy."""
    degree = sum(exponents) + len(exponents)
    points = list(range(degree + 1))
    matrix = Matrix([[Rational(m) ** k for k in range(degree + 1)] for m in points])
    values = Matrix([Rational(_chain_brute(exponents, m).numerator,
                              _chain_brute(exponents, m).denominator) for m in points])
    solution = matrix.LUsolve(values)
    return [Fraction(int(c.p), int(c.q)) for c in solution]


def test_power_sum_poly_matches_sums():
    for l in range(0, 9):
        poly = power_sum_poly(l)
        for m in range(0, 12):
            assert poly(m) == sum(Fraction(u) ** l for u in range(m))


def test_power_sum_poly_vanishes_at_zero():
    for l in range(0, 9):
        assert power_sum_poly(l).coefficient(0) == 0


def test_closed_form_agrees():
    for l in range(0, 10):
        for b in range(1, l + 2):
            assert b_coeff((l,), b) == b_coeff_closed_form(l, b)
    assert b_coeff((0,), 1) == 1
    assert b_coeff((1,), 1) == Fraction(-1, 2)
    assert b_coeff((1,), 2) == Fraction(1, 2)


@pytest.mark.parametrize("exponents", [(0,), (3,), (1, 0), (0, 2), (2, 1), (1, 1, 1), (0, 0, 2)])
def test_b_coeff_against_interpolation(exponents):
    coefficients = _vandermonde_coefficients(exponents)
    assert coefficients[0] == 0
    for b in range(1, len(coefficients)):
        assert b_coeff(exponents, b) == coefficients[b]


def test_b_coeff_range():
    with pytest.raises(ValueError):
        b_coeff((2,), 0)
    with pytest.raises(ValueError):
        b_coeff((2,), 4)
    with pytest.raises(ValueError):
        chain_power_sum((1, -1))


def test_b_coefficient_quasi_shuffle():
    """sum B_{b'}^{l1} B_{b''}^{l2} = B_b^{l2,l1} + B_b^{l1,l2} + B_b^{l1+l2}."""
    def coeff(exponents, b):
        top = sum(exponents) + len(exponents)
        return b_coeff(exponents, b) if 1 <= b <= top else Fraction(0)

    for l1 in range(4):
        for l2 in range(4):
            for b in range(1, l1 + l2 + 3):
                lhs = sum((coeff((l1,), b1) * coeff((l2,), b - b1) for b1 in range(1, b)),
                          Fraction(0))
                rhs = coeff((l2, l1), b) + coeff((l1, l2), b) + coeff((l1 + l2,), b)
                assert lhs == rhs


@pytest.mark.parametrize("exponents,lower", [
    ((2, -1), 1),
    ((-1, 2), 1),
    ((1, 0), 0),
    ((3, -2), 1),
    ((1, -1, 2), 1),
    ((-2, 1, -1), 1),
])
def test_elimination_matches_brute_force(exponents, lower):
    spec = ChainSumSpec(exponents, lower)
    expansion = eliminate_positive_powers(spec)
    for m in range(1, 11):
        assert expansion.evaluate(m) == spec.evaluate(m)
    assert rewrite_chain(exponents, lower).evaluate(7) == spec.evaluate(7)


def test_elimination_uses_only_negative_powers():
    expansion = eliminate_positive_powers(ChainSumSpec((2, -1, 3), 1))
    for index, poly in expansion.items():
        assert all(n >= 1 for n in index.parts)
        assert not poly.is_zero()


def test_chain_spec_validation():
    with pytest.raises(ValueError):
        ChainSumSpec((1, -1), 0)
    with pytest.raises(ValueError):
        ChainSumSpec((1,), 2)


def test_floor_log_and_truncation():
    assert floor_log(5, 1) == 0
    assert floor_log(5, 24) == 1
    assert floor_log(5, 25) == 2
    l_stop = depth1_truncation(5, 2, 6)
    assert all(2 + l - 1 - floor_log(5, l + 1) >= 6 for l in range(l_stop + 1, l_stop + 40))


def test_iterate_depth1_matches_direct_sum(harmonic_engine):
    for n in (1, 2, 3):
        iterated = iterate_depth1(5, 1, 2, n, 5, harmonic_engine)
        direct = harmonic_engine.har_prime(5, 2, CompositionIndex((n,)), 5)
        assert iterated.agrees_with(direct, 5)


def test_iterate_depth1_identity_level(harmonic_engine):
    value = iterate_depth1(7, 1, 1, 2, 4, harmonic_engine)
    assert value.agrees_with(harmonic_engine.har_prime(7, 1, CompositionIndex((2,)), 4), 4)


def test_iterate_depth1_rejects_bad_levels(harmonic_engine):
    with pytest.raises(ValueError):
        iterate_depth1(5, 2, 3, 2, 4, harmonic_engine)
