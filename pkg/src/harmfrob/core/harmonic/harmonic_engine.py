#!/usr/bin/env python3
"""
Weighted multiple harmonic sums.

har_m(n_d, ..., n_1) = m^{n_d+...+n_1} sum_{0<m_1<...<m_d<m} 1/(m_1^{n_1} ... m_d^{n_d})

computed by a prefix-sum dynamic program, exactly over the rationals or
p-adically at a working precision. Prime values har_{p^alpha}(I) go
through the on-disk cache when one is attached.
"""

import logging
import threading
import time
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from sympy import isprime

from harmfrob.core.arith import (
    PAdic,
    PAdicField,
    RationalField,
    binom_general,
    default_working_precision,
)
from harmfrob.core.words.word import CompositionIndex
from harmfrob.errors import PrecisionExhaustedError, ValuationViolationError
from harmfrob.models import (
    CheckStatus,
    ExtendedHarValue,
    FiniteMzvResidue,
    HarValue,
    Report,
)

logger = logging.getLogger(__name__)

# Extra working digits tried when a p-adic sweep lands below its target.
_RETRY_MARGINS = (0, 8, 24)


def _rising_binomial_poly(k: int) -> Dict[int, Fraction]:
    """Coefficients of C(-x, k) = (-1)^k x(x+1)...(x+k-1)/k! as a polynomial in x."""
    poly = {0: Fraction(1)}
    for i in range(k):
        grown: Dict[int, Fraction] = {}
        for deg, c in poly.items():
            # multiply by -(x + i) / (i + 1)
            grown[deg + 1] = grown.get(deg + 1, Fraction(0)) - c / (i + 1)
            grown[deg] = grown.get(deg, Fraction(0)) - c * i / (i + 1)
        poly = grown
    return poly


def _distributions(total: int, slots: int):
    """All tuples of nonnegative integers of the given length and sum."""
    if slots == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _distributions(total - first, slots - 1):
            yield (first,) + rest


class HarmonicEngine:
    """
    Evaluates weighted multiple harmonic sums.

    The engine is safe to share between threads: the DP itself is pure,
    and the memo of prime values is guarded by a lock.
    """

    def __init__(self, cache_manager=None):
        """
        Initialize the harmonic engine.

        Args:
            cache_manager: Optional CacheManager for prime values
        """
        self.cache_manager = cache_manager
        self.operation_count = 0
        self._memo: Dict[Tuple[int, int, CompositionIndex, int], PAdic] = {}
        self._lock = threading.Lock()

    # ------------------------------------------------------------------
    # Dynamic program
    # ------------------------------------------------------------------

    def _prefix_sums(self, upper: int, index: CompositionIndex, ring: Any) -> List[Any]:
        """
        Unweighted S_d(t) for t = 0..upper.

        S_0 = 1 and S_j(t) = sum_{0<u<t} S_{j-1}(u) / u^{n_j}, innermost part first.
        """
        previous = [ring.one()] * (upper + 1)
        for n in reversed(index.parts):
            current = [ring.zero()] * (upper + 1)
            acc = ring.zero()
            for t in range(1, upper + 1):
                current[t] = acc
                acc = acc + previous[t] * ring.coerce(Fraction(1, t ** n))
                self.operation_count += 1
            previous = current
        return previous

    def har(self, m: int, index: CompositionIndex, ring: Any = None,
            weighted: bool = True) -> HarValue:
        """
        Compute har_m(index).

        Args:
            m: Upper bound, at least 1
            index: Composition (n_d, ..., n_1)
            ring: RationalField (default) or a PAdicField
            weighted: Include the factor m^weight

        Returns:
            HarValue
        """
        if m < 1:
            raise ValueError("m must be positive")
        ring = ring if ring is not None else RationalField()
        value = self._prefix_sums(m, index, ring)[m]
        if weighted:
            value = value * m ** index.weight
        return HarValue(m, index, value, weighted, getattr(ring, "prime", None))

    def har_range(self, upper: int, index: CompositionIndex, ring: Any = None,
                  weighted: bool = True) -> List[HarValue]:
        """har_m(index) for m = 1..upper from one sweep."""
        if upper < 1:
            raise ValueError("upper bound must be positive")
        ring = ring if ring is not None else RationalField()
        sums = self._prefix_sums(upper, index, ring)
        prime = getattr(ring, "prime", None)
        out = []
        for m in range(1, upper + 1):
            value = sums[m] * m ** index.weight if weighted else sums[m]
            out.append(HarValue(m, index, value, weighted, prime))
        return out

    # ------------------------------------------------------------------
    # Prime values
    # ------------------------------------------------------------------

    def har_prime(self, prime: int, alpha: int, index: CompositionIndex,
                  precision: int) -> PAdic:
        """
        har_{p^alpha}(index) modulo p^precision.

        The result is truncated to exactly the requested precision, so cold
        and warm cache runs return the same value.

        Raises:
            PrecisionExhaustedError: if no working precision reaches the target
        """
        q = prime ** alpha
        if index.depth >= q:
            return PAdic.exact_zero(prime)
        if index.is_empty():
            return PAdic.from_rational(1, prime, precision)

        key = (prime, alpha, index, precision)
        with self._lock:
            if key in self._memo:
                return self._memo[key]

        value = None
        if self.cache_manager is not None:
            value = self.cache_manager.get_har(prime, alpha, index, precision)
            if value is not None:
                logger.debug("cache hit har_%d^%d(%s)", prime, alpha, index)
        if value is None:
            value = self._compute_prime(prime, alpha, index, precision)
            if self.cache_manager is not None:
                self.cache_manager.put_har(prime, alpha, index, value)
        value = value.with_precision(precision)
        with self._lock:
            self._memo[key] = value
        return value

    def _compute_prime(self, prime: int, alpha: int, index: CompositionIndex,
                       precision: int) -> PAdic:
        base = default_working_precision(precision, alpha, index.weight)
        for extra in _RETRY_MARGINS:
            work = base + extra
            value = self.har(prime ** alpha, index, PAdicField(prime, work)).value
            if value.precision is None or value.precision >= precision:
                logger.debug("har_%d^%d(%s) at working precision %d", prime, alpha, index, work)
                return value
        raise PrecisionExhaustedError(
            f"har_{prime}^{alpha}({index}) stayed below precision {precision}"
        )

    def har_table(self, index: CompositionIndex, primes: List[int], alphas: List[int],
                  precision: int) -> List[HarValue]:
        """har_{p^alpha}(index) for every requested prime and level."""
        rows = []
        for p in primes:
            for alpha in alphas:
                value = self.har_prime(p, alpha, index, precision)
                rows.append(HarValue(p ** alpha, index, value, True, p, alpha))
        return rows

    # ------------------------------------------------------------------
    # Extended values and finite multiple zeta values
    # ------------------------------------------------------------------

    def har_extended(self, m: int, index: CompositionIndex, r: int) -> ExtendedHarValue:
        """
        Extension of har_m to the word of index followed by e0^r.

        Sum over (r_{d+1}, r_d, ..., r_1) of total r of
        C(-l_f, r_{d+1}) prod C(-n_i, r_i) har_m(n_d + r_d, ..., n_1 + r_1),
        returned as a polynomial in l_f.
        """
        if r < 0:
            raise ValueError("r must be nonnegative")
        coefficients: Dict[int, Fraction] = {}
        for shifts in _distributions(r, index.depth + 1):
            outer, inner = shifts[0], shifts[1:]
            factor = Fraction(1)
            for n, k in zip(index.parts, inner):
                factor *= binom_general(-n, k)
            if factor == 0:
                continue
            shifted = CompositionIndex(tuple(n + k for n, k in zip(index.parts, inner)))
            value = factor * self.har(m, shifted).value
            if value == 0:
                continue
            for deg, c in _rising_binomial_poly(outer).items():
                coefficients[deg] = coefficients.get(deg, Fraction(0)) + c * value
        return ExtendedHarValue(m, index, r, coefficients)

    def finite_mzv(self, index: CompositionIndex, primes: List[int]) -> List[FiniteMzvResidue]:
        """
        Residues of p^{-weight} har_p(index) modulo p.

        Raises:
            ValueError: if a modulus is not prime
            ValuationViolationError: if har_p(index) has valuation below the weight
        """
        out = []
        for p in primes:
            if not isprime(p):
                raise ValueError(f"{p} is not prime")
            out.append(FiniteMzvResidue(p, index, self._reduced_residue(p, 1, index)))
        return out

    def _reduced_residue(self, prime: int, alpha: int, index: CompositionIndex) -> int:
        weight = index.weight
        value = self.har_prime(prime, alpha, index, weight + 1)
        if value.valuation is None or value.valuation > weight:
            return 0
        if value.valuation < weight:
            raise ValuationViolationError(
                f"v_{prime}(har_{prime}^{alpha}({index})) = {value.valuation} < {weight}"
            )
        return value.unit % prime

    def check_alpha_independence(self, prime: int, index: CompositionIndex,
                                 alpha_max: int) -> Report:
        """
        Compare the residues of p^{-weight} har_{p^alpha}(index) mod p for
        alpha = 1..alpha_max.
        """
        start = time.perf_counter()
        params = {'p': prime, 'index': str(index), 'alpha_max': alpha_max}
        name = "alpha_independence"
        try:
            residues = {a: self._reduced_residue(prime, a, index) for a in range(1, alpha_max + 1)}
        except ValuationViolationError as exc:
            return Report(name, params, CheckStatus.FAIL, message=str(exc),
                          millis=int((time.perf_counter() - start) * 1000))
        passed = len(set(residues.values())) == 1
        return Report(
            name,
            params,
            CheckStatus.PASS if passed else CheckStatus.FAIL,
            exact_zero=passed,
            threshold=1,
            millis=int((time.perf_counter() - start) * 1000),
            details={'residues': {str(a): r for a, r in residues.items()}},
        )
