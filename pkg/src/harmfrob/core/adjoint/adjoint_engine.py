#!/usr/bin/env python3
"""
Adjoint p-adic multiple zeta values.

The adjoint value at (b, I) is the coefficient of m^{b+weight(I)} with no
har_m factor in the expansion of har_{p^alpha m}(I). It is a rational
combination of products of prime harmonic sums, evaluated here p-adically.
Depth-one p-adic zeta values come from the Bernoulli series

    zeta_{p,alpha}(n) = 1/(n-1) sum_l C(1-n, l) B_l har_{p^alpha}(n+l-1).
"""

import logging
import threading
import time
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from harmfrob.core.arith import PAdic, bernoulli, binom_general, integer_valuation
from harmfrob.core.harmonic.harmonic_engine import HarmonicEngine
from harmfrob.core.power_sums.sigma_expansion import (
    cutoff_for_precision,
    denominator_margin,
    expand_sigma,
    extract_adjoint,
)
from harmfrob.core.words.word import CompositionIndex
from harmfrob.errors import CutoffTooSmallError, PrecisionExhaustedError
from harmfrob.models import (
    AdjointTable,
    CheckStatus,
    LambdaSeries,
    Report,
    ZetaDepth1Value,
)

logger = logging.getLogger(__name__)


class AdjointEngine:
    """
    Evaluates depth-one zeta values and adjoint values.

    Prime harmonic sums come from the attached HarmonicEngine; adjoint
    values go through the cache when one is attached.
    """

    def __init__(self, harmonic_engine: Optional[HarmonicEngine] = None, cache_manager=None):
        """
        Initialize the adjoint engine.

        Args:
            harmonic_engine: Engine for har_{p^alpha}; a fresh one by default
            cache_manager: Optional CacheManager for adjoint values
        """
        self.cache_manager = cache_manager
        self.harmonic = harmonic_engine or HarmonicEngine(cache_manager)
        self._memo: Dict[Tuple[int, int, int, CompositionIndex, int], PAdic] = {}
        self._lock = threading.Lock()

    # ------------------------------------------------------------------
    # Depth one
    # ------------------------------------------------------------------

    def zeta_depth1(self, prime: int, alpha: int, n: int, precision: int) -> ZetaDepth1Value:
        """
        Depth-one p-adic zeta value modulo p^precision.

        The omitted terms l > l_stop have valuation >= n + l - 2 - v_p(n-1),
        so l_stop = K - n + 1 + v_p(n-1) certifies precision K.
        """
        if n < 2:
            raise ValueError("n must be at least 2")
        v_den = integer_valuation(n - 1, prime)
        l_stop = max(0, precision - n + 1 + v_den)
        work = precision + 1 + v_den
        total = PAdic.zero(prime, work)
        for l in range(l_stop + 1):
            b = bernoulli(l)
            if b == 0:
                continue
            har = self.harmonic.har_prime(prime, alpha, CompositionIndex((n + l - 1,)), work)
            total = total + har.scale(binom_general(1 - n, l) * b)
        value = total.scale(Fraction(1, n - 1))
        if value.precision is not None and value.precision < precision:
            raise PrecisionExhaustedError(
                f"zeta_{prime},{alpha}({n}) reached p^{value.precision}, below p^{precision}"
            )
        logger.debug("zeta_%d,%d(%d) summed to l = %d", prime, alpha, n, l_stop)
        return ZetaDepth1Value(prime, alpha, n, value.with_precision(precision), l_stop)

    # ------------------------------------------------------------------
    # Adjoint values
    # ------------------------------------------------------------------

    def _entries(self, prime: int, alpha: int, index: CompositionIndex,
                 b_values: Sequence[int], precision: int) -> Dict[int, PAdic]:
        """Adjoint entries for several b from one expansion."""
        missing = []
        out: Dict[int, PAdic] = {}
        for b in b_values:
            with self._lock:
                cached = self._memo.get((prime, alpha, b, index, precision))
            if cached is None and self.cache_manager is not None:
                cached = self.cache_manager.get_adjoint(prime, alpha, b, index, precision)
            if cached is not None:
                out[b] = cached.with_precision(precision)
            else:
                missing.append(b)
        if not missing:
            return out

        cutoff = cutoff_for_precision(prime, index, max(missing), precision)
        margin = denominator_margin(prime, index.depth, cutoff)
        work = precision + margin
        combinations = extract_adjoint(expand_sigma(index, cutoff))
        logger.debug("adjoint %s at p=%d: cutoff %d, margin %d", index, prime, cutoff, margin)
        for b in missing:
            total = PAdic.zero(prime, work)
            for product_key, coeff in combinations.get((b, index), {}).items():
                value = PAdic.from_rational(1, prime, work)
                for j in product_key:
                    value = value * self.harmonic.har_prime(prime, alpha, j, work)
                total = total + value.scale(coeff)
            if total.precision is not None and total.precision < precision:
                raise PrecisionExhaustedError(
                    f"adjoint ({b}; {index}) reached p^{total.precision}, below p^{precision}"
                )
            out[b] = total.with_precision(precision)
            with self._lock:
                self._memo[(prime, alpha, b, index, precision)] = out[b]
            if self.cache_manager is not None and not out[b].is_exact_zero():
                self.cache_manager.put_adjoint(prime, alpha, b, index, out[b])
        return out

    def adjoint_pmzv(self, prime: int, alpha: int, b: int, index: CompositionIndex,
                     precision: int, weight_cutoff: Optional[int] = None) -> PAdic:
        """
        Raw coefficient of Phi^{-1} e1 Phi at e0^b e1 word(index), modulo p^precision.

        Raises:
            CutoffTooSmallError: if b + weight(index) exceeds weight_cutoff
        """
        if b < 0:
            raise ValueError("b must be nonnegative")
        if weight_cutoff is not None and b + index.weight > weight_cutoff:
            raise CutoffTooSmallError(
                f"b + weight = {b + index.weight} exceeds weight cutoff {weight_cutoff}"
            )
        return self._entries(prime, alpha, index, [b], precision)[b]

    def adjoint_table(self, prime: int, alpha: int, indices: Sequence[CompositionIndex],
                      b_max: int, precision: int,
                      weight_cutoff: Optional[int] = None) -> AdjointTable:
        """All entries (b, I) with b <= b_max for the given indices."""
        top = b_max + max((i.weight for i in indices), default=0)
        cutoff = weight_cutoff if weight_cutoff is not None else top
        table = AdjointTable(prime, alpha, cutoff)
        for index in indices:
            allowed = [b for b in range(b_max + 1) if b + index.weight <= cutoff]
            for b, value in self._entries(prime, alpha, index, allowed, precision).items():
                table.insert(b, index, value)
        return table

    def lambda_adjoint(self, prime: int, alpha: int, index: CompositionIndex,
                       precision: int, lambda_cutoff: int) -> LambdaSeries:
        """
        Lambda-adic adjoint value: coefficient of Lambda^{weight+b} is
        (-1)^depth times the entry (b, index).
        """
        if lambda_cutoff < index.weight:
            raise CutoffTooSmallError(
                f"Lambda cutoff {lambda_cutoff} below weight {index.weight}"
            )
        b_values = list(range(lambda_cutoff - index.weight + 1))
        entries = self._entries(prime, alpha, index, b_values, precision)
        sign = -1 if index.depth % 2 else 1
        coefficients = [entries[b] if sign > 0 else -entries[b] for b in b_values]
        return LambdaSeries(index, coefficients, lambda_cutoff)

    # ------------------------------------------------------------------
    # Resummation
    # ------------------------------------------------------------------

    def resum_adjoint(self, table: AdjointTable, index: CompositionIndex, b_max: int) -> PAdic:
        """sum_{b<=b_max} entry(b, index) from a filled table."""
        total: Optional[PAdic] = None
        for b in range(b_max + 1):
            entry = table.get(b, index)
            if entry is None:
                raise ValueError(f"table has no entry ({b}; {index})")
            total = entry if total is None else total + entry
        return total

    def resummation_check(self, prime: int, alpha: int, index: CompositionIndex,
                          b_max: int, precision: int, tail_margin: int = 2) -> Report:
        """
        Compare har_{p^alpha}(I) with the resummed adjoint entries b <= b_max.

        An omitted entry (b; I) has valuation >= b + weight - tail_margin,
        the margin covering one Bernoulli denominator and one 1/(n + b)
        factor, so the threshold is min(K, weight + b_max + 1 - tail_margin).
        """
        if tail_margin < 0:
            raise ValueError("tail_margin must be nonnegative")
        start = time.perf_counter()
        params = {'p': prime, 'alpha': alpha, 'index': str(index), 'b_max': b_max,
                  'precision': precision, 'tail_margin': tail_margin}
        table = self.adjoint_table(prime, alpha, [index], b_max, precision)
        resummed = self.resum_adjoint(table, index, b_max)
        har = self.harmonic.har_prime(prime, alpha, index, precision)
        defect = har - resummed
        threshold = min(precision, index.weight + b_max + 1 - tail_margin,
                        resummed.precision if resummed.precision is not None else precision)
        return defect_report("resummation", params, defect, threshold, start)

    def zeta_table(self, prime: int, alpha: int, weights: Sequence[int],
                   precision: int) -> List[ZetaDepth1Value]:
        return [self.zeta_depth1(prime, alpha, n, precision) for n in weights]


def defect_report(name: str, params: Dict, defect: PAdic, threshold: int,
                  start: float, **extra) -> Report:
    """Report for a single p-adic defect against a threshold."""
    valuation = defect.certified_valuation()
    exact = defect.is_exact_zero()
    passed = exact or (valuation is not None and valuation >= threshold)
    details = dict(extra)
    if defect.is_zero() and not exact:
        details['zero_to_precision'] = True
    return Report(
        name=name,
        params=params,
        status=CheckStatus.PASS if passed else CheckStatus.FAIL,
        defect_valuation=valuation,
        exact_zero=exact,
        threshold=threshold,
        millis=int((time.perf_counter() - start) * 1000),
        details=details,
    )
