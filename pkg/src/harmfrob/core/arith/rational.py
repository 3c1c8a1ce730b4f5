#!/usr/bin/env python3
"""
Exact rational helpers: valuations, Bernoulli numbers and binomials.
"""

import threading
from fractions import Fraction
from math import comb, factorial
from typing import List, Optional

from harmfrob.core.arith.padic import integer_valuation

_bernoulli_table: List[Fraction] = [Fraction(1)]
_bernoulli_lock = threading.Lock()


def rational_valuation(q: Fraction, p: int) -> Optional[int]:
    """Return v_p(q), or None for q = 0."""
    q = Fraction(q)
    if q == 0:
        return None
    return integer_valuation(q.numerator, p) - integer_valuation(q.denominator, p)


def bernoulli(l: int) -> Fraction:
    """
    Bernoulli number B_l with the convention B_1 = -1/2.

    This is the convention of strict power sums: sum_{0<=u<n} u^l is a
    polynomial in n whose coefficients are built from these values.
    Computed from sum_{j=0}^{m} C(m+1, j) B_j = 0 and cached.
    """
    if l < 0:
        raise ValueError("l must be >= 0")
    if l < len(_bernoulli_table):
        return _bernoulli_table[l]
    with _bernoulli_lock:
        table = _bernoulli_table
        for m in range(len(table), l + 1):
            if m > 1 and m % 2 == 1:
                table.append(Fraction(0))
                continue
            s = sum((comb(m + 1, j) * table[j] for j in range(m)), Fraction(0))
            table.append(-s / (m + 1))
        return table[l]


def binom_general(a: int, l: int) -> Fraction:
    """
    Generalized binomial C(a, l) = a(a-1)...(a-l+1) / l! for any integer a.

    C(-n, l) = (-1)^l C(n+l-1, l).
    """
    if l < 0:
        raise ValueError("l must be >= 0")
    num = 1
    for i in range(l):
        num *= a - i
    return Fraction(num, factorial(l))
