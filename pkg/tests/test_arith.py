#!/usr/bin/env python3
"""
Tests for exact rational helpers and fixed-precision p-adic numbers.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from harmfrob.core.arith import (
    PAdic,
    PAdicField,
    bernoulli,
    binom_general,
    default_working_precision,
    rational_valuation,
)
from harmfrob.errors import InversionOfZeroError, PrecisionExhaustedError

primes = st.sampled_from([2, 3, 5, 7])
precisions = st.integers(min_value=1, max_value=8)
fractions = st.builds(
    Fraction,
    st.integers(min_value=-10 ** 6, max_value=10 ** 6),
    st.integers(min_value=1, max_value=10 ** 4),
)


def test_bernoulli_values():
    """Bernoulli numbers with B_1 = -1/2."""
    assert bernoulli(0) == 1
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(2) == Fraction(1, 6)
    assert bernoulli(3) == 0
    assert bernoulli(4) == Fraction(-1, 30)
    assert bernoulli(6) == Fraction(1, 42)
    assert bernoulli(12) == Fraction(-691, 2730)
    with pytest.raises(ValueError):
        bernoulli(-1)


def test_binom_general_negative_top():
    """C(-n, l) = (-1)^l C(n+l-1, l)."""
    assert binom_general(-2, 3) == -4
    assert binom_general(-1, 5) == -1
    assert binom_general(5, 2) == 10
    assert binom_general(3, 5) == 0
    assert binom_general(-7, 0) == 1


def test_rational_valuation():
    assert rational_valuation(Fraction(50, 3), 5) == 2
    assert rational_valuation(Fraction(3, 250), 5) == -3
    assert rational_valuation(Fraction(0), 5) is None


def test_from_rational_digits():
    """1/3 in Z_5 to four digits."""
    x = PAdic.from_rational(Fraction(1, 3), 5, 4)
    assert x.valuation == 0
    assert x.digits() == [2, 3, 1, 3]
    assert (x * 3).agrees_with(PAdic.from_rational(1, 5, 4), 4)
    assert str(x) == "5^0 * (2,3,1,3) + O(5^4)"


def test_zero_kinds():
    """Exact zero against zero known to a precision."""
    exact = PAdic.from_rational(0, 5, 4)
    assert exact.is_exact_zero()
    assert str(exact) == "0 (exact)"

    vanished = PAdic.from_rational(125, 5, 3)
    assert vanished.is_zero()
    assert not vanished.is_exact_zero()
    assert vanished.certified_valuation() == 3
    assert str(vanished) == "0 + O(5^3)"


def test_precision_rules():
    """Addition keeps the smaller precision, multiplication min(A1+v2, A2+v1)."""
    a = PAdic.from_rational(5, 5, 4)
    b = PAdic.from_rational(25, 5, 4)
    c = PAdic.from_rational(1, 5, 6)
    product = a * b
    assert product.valuation == 3
    assert product.precision == 5
    assert (a + c).precision == 4
    assert a.inverse().precision == 4 - 2
    assert a.scale(Fraction(1, 5)).precision == 3


def test_invalid_operations():
    with pytest.raises(InversionOfZeroError):
        PAdic.exact_zero(5).inverse()
    with pytest.raises(PrecisionExhaustedError):
        PAdic.zero(5, 3).inverse()
    with pytest.raises(PrecisionExhaustedError):
        PAdic.exact_zero(5) + 1
    with pytest.raises(ValueError):
        PAdic.from_rational(1, 5, 3) + PAdic.from_rational(1, 7, 3)


def test_exact_zero_only_absorbs_exact_zero():
    assert (PAdic.exact_zero(5) + 0).is_exact_zero()
    assert (PAdic.exact_zero(5) - Fraction(0)).is_exact_zero()
    with pytest.raises(PrecisionExhaustedError):
        PAdic.exact_zero(5) + Fraction(1, 3)
    total = PAdic.zero(5, 4) + Fraction(1, 3)
    assert total.agrees_with(PAdic.from_rational(Fraction(1, 3), 5, 4), 4)
    assert total.precision == 4


def test_padic_field_coercion():
    field = PAdicField(7, 5)
    assert field.one().agrees_with(PAdic.from_rational(1, 7, 5), 5)
    assert field.is_zero(field.zero())
    assert field.valuation(Fraction(49, 2)) == 2


def test_default_working_precision_margin():
    assert default_working_precision(10, 2, 3) == 10 + 12 + 4


@settings(max_examples=200, deadline=None)
@given(a=fractions, b=fractions, p=primes, k=precisions)
def test_addition_matches_rationals(a, b, p, k):
    total = PAdic.from_rational(a, p, k) + PAdic.from_rational(b, p, k)
    assert total.agrees_with(PAdic.from_rational(a + b, p, k + 20), k)


@settings(max_examples=200, deadline=None)
@given(a=fractions, b=fractions, p=primes, k=precisions)
def test_multiplication_matches_rationals(a, b, p, k):
    product = PAdic.from_rational(a, p, k) * PAdic.from_rational(b, p, k)
    if product.is_exact_zero():
        assert a * b == 0
        return
    oracle = PAdic.from_rational(a * b, p, 2 * k + 40)
    if oracle.is_exact_zero():
        assert product.is_zero()
        return
    assert product.agrees_with(oracle, product.precision)


@settings(max_examples=100, deadline=None)
@given(a=fractions, p=primes, k=precisions)
def test_inverse_matches_rationals(a, p, k):
    x = PAdic.from_rational(a, p, k)
    if x.is_zero():
        return
    inverse = x.inverse()
    assert inverse.agrees_with(PAdic.from_rational(1 / a, p, 2 * k + 40), inverse.precision)


@settings(max_examples=100, deadline=None)
@given(a=fractions, p=primes, k=precisions)
def test_digits_rebuild_value(a, p, k):
    x = PAdic.from_rational(a, p, k)
    if x.is_zero():
        return
    rebuilt = PAdic.from_digits(p, x.valuation, x.digits(), x.precision)
    assert rebuilt == x
