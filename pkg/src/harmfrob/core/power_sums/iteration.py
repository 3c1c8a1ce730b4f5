#!/usr/bin/env python3
"""
Depth-one iteration of the harmonic expansion from level alpha0 to alpha.

With q0 = p^alpha0 the depth-one expansion reads
har_{q0 m}(n) = har_m(n) + sum_{b>=1} m^{b+n} E_b,
E_b = sum_{l>=b-1} C(-n, l) B_b^l har_{q0}(n + l).
Telescoping over m = 1, q0, q0^2, ... gives
har_{p^alpha}(n) = sum_b (p^{alpha(n+b)} - 1) / (p^{alpha0(n+b)} - 1) * E_b.
"""

import logging
from fractions import Fraction

from harmfrob.core.arith import PAdic, binom_general
from harmfrob.core.power_sums.polynomials import b_coeff
from harmfrob.core.words.word import CompositionIndex
from harmfrob.errors import PrecisionExhaustedError

logger = logging.getLogger(__name__)


def floor_log(prime: int, x: int) -> int:
    """Largest k with prime^k <= x, for x >= 1."""
    k = 0
    power = prime
    while power <= x:
        k += 1
        power *= prime
    return k


def depth1_truncation(prime: int, n: int, precision: int) -> int:
    """
    Smallest L such that every omitted l > L has
    n + l - 1 - floor(log_p(l + 1)) >= precision.
    """
    l_stop = max(0, precision - n + 1)
    while n + l_stop - floor_log(prime, l_stop + 2) < precision:
        l_stop += 1
    return l_stop


def iterate_depth1(prime: int, alpha0: int, alpha: int, n: int, precision: int,
                   engine) -> PAdic:
    """
    har_{p^alpha}(n) from level-alpha0 data.

    Args:
        prime: The prime p
        alpha0: Base level, dividing alpha
        alpha: Target level
        n: Depth-one index, n >= 1
        precision: Target absolute precision K
        engine: HarmonicEngine supplying har_{p^alpha0}

    Returns:
        PAdic known modulo p^precision

    Raises:
        ValueError: if alpha0 does not divide alpha
        PrecisionExhaustedError: if the sum lands below the target
    """
    if alpha0 < 1 or alpha % alpha0:
        raise ValueError(f"alpha0 = {alpha0} must divide alpha = {alpha}")
    l_stop = depth1_truncation(prime, n, precision)
    work = precision + 2 + floor_log(prime, l_stop + 2)
    logger.debug("iterate_depth1 p=%d n=%d: l <= %d at working precision %d",
                 prime, n, l_stop, work)

    total = PAdic.zero(prime, work)
    for l in range(l_stop + 1):
        har = engine.har_prime(prime, alpha0, CompositionIndex((n + l,)), work)
        binom = binom_general(-n, l)
        for b in range(1, l + 2):
            coefficient = b_coeff((l,), b)
            if coefficient == 0:
                continue
            ratio = geometric_ratio(prime, alpha0, alpha, b + n)
            total = total + har.scale(binom * coefficient * ratio)
    if total.precision is not None and total.precision < precision:
        raise PrecisionExhaustedError(
            f"iteration reached p^{total.precision}, below p^{precision}"
        )
    return total.with_precision(precision)


def geometric_ratio(prime: int, alpha0: int, alpha: int, exponent: int) -> Fraction:
    """(p^{alpha e} - 1) / (p^{alpha0 e} - 1) as an exact rational."""
    return Fraction(prime ** (alpha * exponent) - 1, prime ** (alpha0 * exponent) - 1)
