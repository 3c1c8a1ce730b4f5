#!/usr/bin/env python3
"""
Identity checks for harmonic sums, adjoint values and series operations.

This module provides the RelationValidator, which evaluates:
- Identities given as data: signed products of har, adjoint, zeta and
  B-coefficient atoms
- The expansion, resummation and depth-one comparison identities
- Quasi-shuffle identities of adjoint values and of B-coefficients
- Finite multiple zeta value smoke tests and the depth-one congruence
- Convention-sensitive shuffle displays, reported under every variant
- The Ihara group law and the contraction inequalities of valuation profiles

A mathematical failure is a Report outcome, never an exception.
"""

import functools
import inspect
import logging
import random
import time
from fractions import Fraction
from math import comb
from typing import Any, Callable, Counter, Dict, List, Optional, Sequence, Tuple, Union

from sympy import primerange

from harmfrob.core.adjoint.adjoint_engine import AdjointEngine, defect_report
from harmfrob.core.adjoint.harmonic_action import (
    adjoint_series,
    circ_har_z,
    harmonic_generating_series,
    read_har,
)
from harmfrob.core.arith import PAdic, PAdicField, binom_general, rational_valuation
from harmfrob.core.harmonic.harmonic_engine import HarmonicEngine
from harmfrob.core.power_sums import (
    b_coeff,
    denominator_margin,
    depth1_truncation,
    expand_sigma,
    floor_log,
    iterate_depth1,
    max_valuation_below,
)
from harmfrob.core.words import (
    NcSeries,
    ValuationProfile,
    Word,
    ihara,
    ihara_inverse,
    lie_bracket,
    s_y,
    series_exp,
    shft_star,
    shuffle,
    stuffle,
    tau_scale,
)
from harmfrob.core.words.word import CompositionIndex, compositions
from harmfrob.errors import CutoffTooSmallError, HarmFrobError, InadmissiblePairError
from harmfrob.models import CheckStatus, IdentityCheck, Report

logger = logging.getLogger(__name__)

Atom = Tuple[Any, ...]
Value = Union[Fraction, PAdic]


def _index(value: Union[str, Sequence[int], CompositionIndex]) -> CompositionIndex:
    if isinstance(value, CompositionIndex):
        return value
    if isinstance(value, str):
        return CompositionIndex.parse(value)
    return CompositionIndex(tuple(value))


def _word(value: Union[str, Word]) -> Word:
    if isinstance(value, Word):
        return value
    return Word("" if value == "∅" else value)


def _jsonable(value: Any) -> Any:
    if isinstance(value, (CompositionIndex, Word)):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, Fraction):
        return str(value)
    return value


def guarded_check(name: str) -> Callable:
    """
    Turn a check method into one that always returns a Report.

    The report gets the check name, the bound call arguments as params and
    the wall time. Parameter and arithmetic errors become error reports;
    an inadmissible word pair becomes an inadmissible report.
    """
    def decorate(method: Callable) -> Callable:
        signature = inspect.signature(method)

        @functools.wraps(method)
        def wrapper(self, *args, **kwargs) -> Report:
            start = time.perf_counter()
            params: Dict[str, Any] = {}
            try:
                bound = signature.bind(self, *args, **kwargs)
                bound.apply_defaults()
                params = {k: _jsonable(v) for k, v in bound.arguments.items() if k != 'self'}
                report = method(self, *args, **kwargs)
            except InadmissiblePairError as exc:
                report = Report(name, params, CheckStatus.INADMISSIBLE, message=str(exc))
            except (HarmFrobError, ValueError, TypeError) as exc:
                logger.warning("check %s raised %s: %s", name, type(exc).__name__, exc)
                report = Report(name, params, CheckStatus.ERROR, message=str(exc))
            report.name = name
            report.params = params
            report.millis = int((time.perf_counter() - start) * 1000)
            return report

        wrapper.check_name = name
        return wrapper

    return decorate


def _exact_report(name: str, mismatches: List[Any], **details) -> Report:
    passed = not mismatches
    if mismatches:
        details['mismatches'] = mismatches[:20]
    return Report(
        name,
        {},
        CheckStatus.PASS if passed else CheckStatus.FAIL,
        exact_zero=passed,
        details=details,
    )


def _min_valuation(values: List[Optional[int]]) -> Optional[int]:
    finite = [v for v in values if v is not None]
    return min(finite) if finite else None


class RelationValidator:
    """
    Evaluates identity checks and returns Reports.

    The validator shares its engines (and through them the caches) with
    the rest of a run, so checks running in parallel reuse computed atoms.
    """

    def __init__(self, adjoint_engine: Optional[AdjointEngine] = None,
                 harmonic_engine: Optional[HarmonicEngine] = None,
                 cache_manager=None, config_hash: Optional[str] = None):
        """
        Initialize the relation validator.

        Args:
            adjoint_engine: Engine for adjoint and zeta values
            harmonic_engine: Engine for harmonic sums
            cache_manager: Optional CacheManager used by fresh engines
            config_hash: Run configuration hash stamped on every report
        """
        if harmonic_engine is None:
            harmonic_engine = (adjoint_engine.harmonic if adjoint_engine is not None
                               else HarmonicEngine(cache_manager))
        self.harmonic = harmonic_engine
        self.adjoint = adjoint_engine or AdjointEngine(harmonic_engine, cache_manager)
        self.config_hash = config_hash

    # ------------------------------------------------------------------
    # Dispatch
    # ------------------------------------------------------------------

    def run(self, check: IdentityCheck) -> Report:
        """
        Run one IdentityCheck: an explicit term plan or a named check routine.

        Args:
            check: The identity to verify

        Returns:
            Report named after the check
        """
        if check.terms is not None:
            report = self.evaluate_identity(check)
        else:
            method = getattr(self, f"check_{check.check_type}", None)
            if method is None or not hasattr(method, 'check_name'):
                report = Report(check.name, dict(check.params), CheckStatus.ERROR,
                                message=f"unknown check type {check.check_type!r}")
            else:
                report = method(**check.params)
        report.name = check.name
        report.informational = report.informational or check.informational
        report.config_hash = self.config_hash
        level = logging.INFO if report.passed or report.informational else logging.WARNING
        logger.log(level, "%s: %s (v=%s, threshold=%s, %d ms)", report.name,
                   report.status.value, "exact zero" if report.exact_zero else report.defect_valuation,
                   report.threshold, report.millis)
        return report

    # ------------------------------------------------------------------
    # Identities as data
    # ------------------------------------------------------------------

    def resolve_atom(self, atom: Atom, precision: Optional[int],
                     weight_cutoff: Optional[int] = None) -> Value:
        """
        Evaluate one atom.

        Atoms: ('har', p, alpha, index), ('adjoint', p, alpha, b, index),
        ('zeta', p, alpha, n), ('b_coeff', exponents, b), ('rational', q).
        """
        kind = atom[0]
        if kind == 'b_coeff':
            return b_coeff(tuple(atom[1]), atom[2])
        if kind == 'rational':
            return Fraction(atom[1])
        if precision is None:
            raise ValueError(f"atom {kind!r} needs a precision")
        if kind == 'har':
            _, prime, alpha, index = atom
            return self.harmonic.har_prime(prime, alpha, _index(index), precision)
        if kind == 'adjoint':
            _, prime, alpha, b, index = atom
            return self.adjoint.adjoint_pmzv(prime, alpha, b, _index(index), precision,
                                             weight_cutoff=weight_cutoff)
        if kind == 'zeta':
            _, prime, alpha, n = atom
            return self.adjoint.zeta_depth1(prime, alpha, n, precision).value
        raise ValueError(f"unknown atom kind {kind!r}")

    def evaluate_identity(self, check: IdentityCheck) -> Report:
        """
        Sum the signed atom products of check.terms and measure the defect.

        Exact plans pass only on an exact zero. p-adic plans pass when the
        defect valuation reaches the threshold, which is capped by the
        smallest precision of any atom and of the sum.
        """
        start = time.perf_counter()
        params = dict(check.params)
        try:
            precision = params.get('precision')
            weight_cutoff = params.get('weight_cutoff')
            products: List[Value] = []
            atom_precisions: List[int] = []
            prime: Optional[int] = None
            for coeff, atoms in check.terms:
                value: Value = Fraction(coeff)
                for atom in atoms:
                    resolved = self.resolve_atom(atom, precision, weight_cutoff)
                    if isinstance(resolved, PAdic):
                        prime = resolved.prime
                        if resolved.precision is not None:
                            atom_precisions.append(resolved.precision)
                    value = value * resolved
                products.append(value)
        except InadmissiblePairError as exc:
            return Report(check.name, params, CheckStatus.INADMISSIBLE, message=str(exc))
        except (HarmFrobError, ValueError, TypeError) as exc:
            logger.warning("identity %s raised %s: %s", check.name, type(exc).__name__, exc)
            return Report(check.name, params, CheckStatus.ERROR, message=str(exc))

        if prime is None:
            total = sum(products, Fraction(0))
            report = _exact_report(check.name, [] if total == 0 else [str(total)])
            report.defect_valuation = None if total == 0 else rational_valuation(total, params.get('p', 2))
            report.params = params
            report.millis = int((time.perf_counter() - start) * 1000)
            return report

        work = min(atom_precisions) if atom_precisions else precision
        total = PAdic.exact_zero(prime)
        for value in products:
            if isinstance(value, Fraction):
                value = PAdic.from_rational(value, prime, work)
            total = total + value
        threshold = check.threshold if check.threshold is not None else precision
        caps = [c for c in [threshold, total.precision] + atom_precisions if c is not None]
        report = defect_report(check.name, params, total, min(caps), start)
        return report

    # ------------------------------------------------------------------
    # Harmonic sums
    # ------------------------------------------------------------------

    @guarded_check("stuffle_har")
    def check_stuffle_har(self, m_max: int = 60, weight_max: int = 6) -> Report:
        """har_m(I) har_m(J) equals the stuffle image under har_m, exactly, for m <= m_max."""
        if m_max < 1 or weight_max < 2:
            raise ValueError("need m_max >= 1 and weight_max >= 2")
        tables: Dict[CompositionIndex, List[Fraction]] = {}

        def values(index: CompositionIndex) -> List[Fraction]:
            if index not in tables:
                tables[index] = [h.value for h in self.harmonic.har_range(m_max, index)]
            return tables[index]

        mismatches = []
        pairs = 0
        for w1 in range(1, weight_max):
            for w2 in range(1, weight_max - w1 + 1):
                for first in compositions(w1):
                    for second in compositions(w2):
                        pairs += 1
                        image: Counter = stuffle(first, second)
                        lhs_a, lhs_b = values(first), values(second)
                        for m in range(m_max):
                            rhs = sum((c * values(k)[m] for k, c in image.items()), Fraction(0))
                            if lhs_a[m] * lhs_b[m] != rhs:
                                mismatches.append(f"{first} * {second} at m={m + 1}")
                                break
        return _exact_report("stuffle_har", mismatches, pairs=pairs)

    @guarded_check("har_valuation")
    def check_har_valuation(self, prime: int, alphas: Sequence[int] = (1, 2),
                            weight_max: int = 5) -> Report:
        """
        v_p(har_{p^alpha}(I)) >= weight(I), and the residue of
        p^{-weight} har_{p^alpha}(I) mod p does not depend on alpha.
        """
        violations = []
        alpha_mismatches = []
        checked = 0
        for weight in range(1, weight_max + 1):
            for index in compositions(weight):
                residues = {}
                for alpha in alphas:
                    value = self.harmonic.har_prime(prime, alpha, index, weight + 1)
                    checked += 1
                    v = value.certified_valuation()
                    if v is not None and v < weight:
                        violations.append(f"alpha={alpha} {index}: v={v}")
                        continue
                    residues[alpha] = value.unit % prime if v == weight else 0
                if len(set(residues.values())) > 1:
                    alpha_mismatches.append(f"{index}: {residues}")
        return _exact_report("har_valuation", violations + alpha_mismatches,
                             values_checked=checked, valuation_violations=len(violations),
                             alpha_mismatches=len(alpha_mismatches))

    @guarded_check("alpha_independence")
    def check_alpha_independence(self, prime: int, index: str, alpha_max: int = 2) -> Report:
        return self.harmonic.check_alpha_independence(prime, _index(index), alpha_max)

    @guarded_check("finite_depth1")
    def check_finite_depth1(self, p_max: int, n: int) -> Report:
        """Residues of p^{-n} har_p(n) vanish exactly when (p - 1) does not divide n."""
        primes = list(primerange(2, p_max + 1))
        mismatches = []
        for row in self.harmonic.finite_mzv(CompositionIndex((n,)), primes):
            p = row.prime
            expected = p - 1 if n % (p - 1) == 0 else 0
            if row.residue != expected:
                mismatches.append(f"p={p}: residue {row.residue}, expected {expected}")
        return _exact_report("finite_depth1", mismatches, primes=len(primes))

    @guarded_check("finite_residue")
    def check_finite_residue(self, index: str, p_max: int, min_prime: int = 5,
                             expected: int = 0) -> Report:
        """Residues of p^{-weight} har_p(index) equal expected for min_prime <= p <= p_max."""
        primes = list(primerange(min_prime, p_max + 1))
        rows = self.harmonic.finite_mzv(_index(index), primes)
        mismatches = [f"p={row.prime}: residue {row.residue}" for row in rows
                      if row.residue != expected % row.prime]
        return _exact_report("finite_residue", mismatches, primes=len(primes))

    @guarded_check("kz_shape")
    def check_kz_shape(self, index: str, primes: Sequence[int]) -> Report:
        """
        Depth one: har_p(n) = (1 + (-1)^n) zeta_{p,1}(n) mod p^{n+1}, so the
        finite residue equals the reduction of (1 + (-1)^n) zeta_{p,1}(n) p^{-n}.
        """
        index = _index(index)
        if index.depth != 1:
            raise ValueError("kz_shape is implemented in depth one")
        n = index.parts[0]
        usable = [p for p in primes if p > n + 2]
        if not usable:
            raise ValueError(f"no prime above {n + 2} among {list(primes)}")
        start = time.perf_counter()
        valuations = []
        residues = {}
        failures = []
        for p in usable:
            har = self.harmonic.har_prime(p, 1, index, n + 1)
            zeta = self.adjoint.zeta_depth1(p, 1, n, n + 1).value.scale(1 + (-1) ** n)
            defect = har - zeta
            v = defect.certified_valuation()
            valuations.append(v)
            residues[str(p)] = 0 if har.valuation is None or har.valuation > n else har.unit % p
            if v is not None and v < n + 1:
                failures.append(p)
        report = Report(
            "kz_shape",
            {},
            CheckStatus.FAIL if failures else CheckStatus.PASS,
            defect_valuation=_min_valuation(valuations),
            threshold=n + 1,
            details={'residues': residues, 'failing_primes': failures},
        )
        report.millis = int((time.perf_counter() - start) * 1000)
        return report

    # ------------------------------------------------------------------
    # Expansion and depth one
    # ------------------------------------------------------------------

    @guarded_check("expansion")
    def check_expansion(self, prime: int, alpha: int, index: str, m_max: int,
                        precision: int) -> Report:
        """
        Truncated expansion of har_{p^alpha m}(I) against the exact value for
        every m <= m_max, each defect against its certified tail bound.
        """
        index = _index(index)
        lam = max_valuation_below(prime, m_max)
        cutoff = max(index.weight, precision - 1 + index.weight * lam)
        expansion = expand_sigma(index, cutoff)
        q = prime ** alpha
        per_m: Dict[str, Any] = {}
        valuations = []
        failing = []
        for m in range(1, m_max + 1):
            exact = self.harmonic.har(q * m, index).value
            approx = expansion.evaluate_exact(prime, alpha, m, self.harmonic)
            v = rational_valuation(exact - approx, prime)
            if v is None:
                per_m[str(m)] = "exact zero"
                continue
            per_m[str(m)] = v
            valuations.append(v)
            if v < expansion.tail_bound(prime, m):
                failing.append(m)
        logger.debug("expansion %s at cutoff %d: %d terms", index, cutoff, len(expansion))
        return Report(
            "expansion",
            {},
            CheckStatus.FAIL if failing else CheckStatus.PASS,
            defect_valuation=_min_valuation(valuations),
            exact_zero=not valuations,
            threshold=precision,
            details={'weight_cutoff': cutoff, 'per_m': per_m, 'failing_m': failing},
        )

    @guarded_check("zeta_vanishing")
    def check_zeta_vanishing(self, prime: int, alpha: int, precision: int, n: int = 2) -> Report:
        """zeta_{p,alpha}(n) for even n vanishes to the requested precision."""
        start = time.perf_counter()
        result = self.adjoint.zeta_depth1(prime, alpha, n, precision)
        return defect_report("zeta_vanishing", {}, result.value, precision, start,
                             truncation_l=result.truncation_l)

    @guarded_check("depth1_coefficients")
    def check_depth1_coefficients(self, prime: int, alpha: int, n: int, b_max: int,
                                  precision: int) -> Report:
        """
        Adjoint entry (b, (n)) against sum_{l >= b-1} C(-n, l) B_b^l har_{p^alpha}(n + l).
        """
        start = time.perf_counter()
        l_stop = depth1_truncation(prime, n, precision)
        work = precision + 2 + floor_log(prime, l_stop + 2)
        defect_total = PAdic.exact_zero(prime)
        valuations = {}
        for b in range(1, b_max + 1):
            direct = PAdic.zero(prime, work)
            for l in range(b - 1, l_stop + 1):
                har = self.harmonic.har_prime(prime, alpha, CompositionIndex((n + l,)), work)
                direct = direct + har.scale(binom_general(-n, l) * b_coeff((l,), b))
            entry = self.adjoint.adjoint_pmzv(prime, alpha, b, CompositionIndex((n,)), precision)
            defect = (entry - direct).with_precision(precision)
            valuations[str(b)] = defect.certified_valuation()
            defect_total = defect if defect_total.is_exact_zero() else _worse(defect_total, defect)
        return defect_report("depth1_coefficients", {}, defect_total, precision, start,
                             per_b=valuations, truncation_l=l_stop)

    @guarded_check("depth1_cross")
    def check_depth1_cross(self, prime: int, alpha: int, n: int, b_max: int,
                           precision: int) -> Report:
        """
        Adjoint entry (b, (n)) against (-1)^{b-1} C(n+b-1, b) zeta_{p,alpha}(n+b).
        """
        start = time.perf_counter()
        defect_total = PAdic.exact_zero(prime)
        valuations = {}
        for b in range(1, b_max + 1):
            entry = self.adjoint.adjoint_pmzv(prime, alpha, b, CompositionIndex((n,)), precision)
            zeta = self.adjoint.zeta_depth1(prime, alpha, n + b, precision).value
            expected = zeta.scale((-1) ** (b - 1) * comb(n + b - 1, b))
            defect = (entry - expected).with_precision(precision)
            valuations[str(b)] = defect.certified_valuation()
            defect_total = defect if defect_total.is_exact_zero() else _worse(defect_total, defect)
        return defect_report("depth1_cross", {}, defect_total, precision, start, per_b=valuations)

    @guarded_check("iteration_depth1")
    def check_iteration_depth1(self, prime: int, n: int, precision: int,
                               alpha0: int = 1, alpha: int = 2) -> Report:
        """har_{p^alpha}(n) from level-alpha0 data against the direct sum."""
        start = time.perf_counter()
        iterated = iterate_depth1(prime, alpha0, alpha, n, precision, self.harmonic)
        direct = self.harmonic.har_prime(prime, alpha, CompositionIndex((n,)), precision)
        return defect_report("iteration_depth1", {}, iterated - direct, precision, start)

    # ------------------------------------------------------------------
    # Adjoint values
    # ------------------------------------------------------------------

    @guarded_check("resummation")
    def check_resummation(self, prime: int, alpha: int, index: str, b_max: int,
                          precision: int, tail_margin: int = 2) -> Report:
        return self.adjoint.resummation_check(prime, alpha, _index(index), b_max, precision,
                                              tail_margin=tail_margin)

    @guarded_check("adjoint_stuffle")
    def check_adjoint_stuffle(self, prime: int, alpha: int, b: int, n1: int, n2: int,
                              precision: int, weight_cutoff: Optional[int] = None) -> Report:
        """
        Depth (1,1) quasi-shuffle of adjoint entries:

        entry(b; n2, n1) + entry(b; n1, n2) + entry(b; n1 + n2)
            = sum_{b' + b'' = b} entry(b'; n1) entry(b''; n2).

        Atoms are evaluated four digits above the target to absorb the
        denominators of the product side.
        """
        work = precision + 4
        if weight_cutoff is not None and b + n1 + n2 > weight_cutoff:
            raise CutoffTooSmallError(
                f"b + n1 + n2 = {b + n1 + n2} exceeds weight cutoff {weight_cutoff}"
            )
        for index in (CompositionIndex((n2, n1)), CompositionIndex((n1, n2)),
                      CompositionIndex((n1 + n2,)), CompositionIndex((n1,)),
                      CompositionIndex((n2,))):
            self.adjoint.adjoint_table(prime, alpha, [index], b, work)
        terms = [
            (Fraction(1), (('adjoint', prime, alpha, b, f"{n2},{n1}"),)),
            (Fraction(1), (('adjoint', prime, alpha, b, f"{n1},{n2}"),)),
            (Fraction(1), (('adjoint', prime, alpha, b, f"{n1 + n2}"),)),
        ]
        for b1 in range(b + 1):
            terms.append((Fraction(-1), (('adjoint', prime, alpha, b1, f"{n1}"),
                                         ('adjoint', prime, alpha, b - b1, f"{n2}"))))
        plan = IdentityCheck(
            "adjoint_stuffle",
            "adjoint_stuffle",
            params={'precision': work, 'weight_cutoff': weight_cutoff},
            terms=terms,
            threshold=precision,
        )
        return self.evaluate_identity(plan)

    @guarded_check("b_quasi_shuffle")
    def check_b_quasi_shuffle(self, l_max: int = 8) -> Report:
        """
        sum_{b'+b''=b} B_{b'}^{l1} B_{b''}^{l2} = B_b^{l2,l1} + B_b^{l1,l2} + B_b^{l1+l2},
        exactly, for all l1, l2 <= l_max and every b.
        """
        mismatches = []
        plans = 0
        for l1 in range(l_max + 1):
            for l2 in range(l_max + 1):
                for b in range(1, l1 + l2 + 3):
                    terms = []
                    for b1 in range(1, min(b - 1, l1 + 1) + 1):
                        b2 = b - b1
                        if 1 <= b2 <= l2 + 1:
                            terms.append((Fraction(1), (('b_coeff', (l1,), b1),
                                                        ('b_coeff', (l2,), b2))))
                    terms.append((Fraction(-1), (('b_coeff', (l2, l1), b),)))
                    terms.append((Fraction(-1), (('b_coeff', (l1, l2), b),)))
                    if b <= l1 + l2 + 1:
                        terms.append((Fraction(-1), (('b_coeff', (l1 + l2,), b),)))
                    plans += 1
                    report = self.evaluate_identity(IdentityCheck(
                        f"b_quasi_shuffle {l1},{l2} b={b}", "b_quasi_shuffle", terms=terms))
                    if not report.passed:
                        mismatches.append(f"l1={l1} l2={l2} b={b}")
        return _exact_report("b_quasi_shuffle", mismatches, plans=plans)

    @guarded_check("circ_composition")
    def check_circ_composition(self, prime: int, alpha: int, n: int, precision: int,
                               weight_cutoff: Optional[int] = None) -> Report:
        """
        Acting twice with the level-alpha adjoint series on the harmonic series
        of har_1 gives har_{p^{2 alpha}}(n), compared with iterate_depth1.

        The first action alone must give har_{p^alpha}(n).
        """
        start = time.perf_counter()
        cutoff = weight_cutoff if weight_cutoff is not None else precision + 6
        if n + 2 > cutoff - 2:
            raise ValueError(f"weight cutoff {cutoff} too small for n = {n}")
        work = precision + denominator_margin(prime, 1, cutoff) + 2
        indices = [CompositionIndex((k,)) for k in range(1, cutoff)]
        table = self.adjoint.adjoint_table(prime, alpha, indices, cutoff - 2, work,
                                           weight_cutoff=cutoff - 1)
        g = adjoint_series(table, precision=work, depth_cutoff=2)
        ring = PAdicField(prime, work)
        h1 = harmonic_generating_series(1, cutoff, ring, depth_cutoff=2, engine=self.harmonic)
        once = circ_har_z(g, h1, 1)
        twice = circ_har_z(g, once, prime ** alpha)

        target = CompositionIndex((n,))
        first = read_har(once, target) - self.harmonic.har_prime(prime, alpha, target, precision)
        value = read_har(twice, target)
        oracle = iterate_depth1(prime, alpha, 2 * alpha, n, precision, self.harmonic)
        threshold = min(precision, value.precision) if value.precision is not None else precision
        return defect_report("circ_composition", {}, value - oracle, threshold, start,
                             weight_cutoff=cutoff,
                             first_action_valuation=first.certified_valuation())

    # ------------------------------------------------------------------
    # Convention-sensitive shuffle displays
    # ------------------------------------------------------------------

    def _dmr_sides(self, w: Word, w2: Word, n: int, display: str, cutoff: int,
                   shift_sign: int, parity: bool) -> Tuple[Counter, Dict[str, Fraction]]:
        if display == "block":
            head = Word("0" * (n - 1) + "1")
            lhs = shuffle(head + w, w2)
            factor = (-1) ** n if parity else 1
            image = shft_star(head + w2, cutoff, sign=shift_sign)
            left = w
        elif display == "antipode":
            lhs = shuffle(w, w2)
            sign, reversed_index = s_y(w.to_composition())
            factor = sign if parity else 1
            image = shft_star(reversed_index.to_word() + w2, cutoff, sign=shift_sign)
            left = Word()
        else:
            raise ValueError(f"unknown display {display!r}")
        rhs: Dict[str, Fraction] = {}
        for u, c in image.items():
            for v, k in shuffle(left, u).items():
                rhs[v.letters] = rhs.get(v.letters, Fraction(0)) + factor * c * k
        return lhs, rhs

    def _sigma_functional(self, prime: int, alpha: int, precision: int) -> Callable[[str], PAdic]:
        def h(letters: str) -> PAdic:
            if not letters:
                return PAdic.from_rational(1, prime, precision)
            index = Word(letters).to_composition()
            return self.harmonic.har_prime(prime, alpha, index, precision)
        return h

    def _lambda_functional(self, prime: int, alpha: int, precision: int) -> Callable[[str], PAdic]:
        def h(letters: str) -> PAdic:
            if not letters:
                return PAdic.exact_zero(prime)
            word = Word(letters)
            b = word.leading_e0()
            rest = Word(letters[b + 1:])
            return self.adjoint.adjoint_pmzv(prime, alpha, b, rest.to_composition(), precision)
        return h

    @guarded_check("dmr_shuffle")
    def check_dmr_shuffle(self, prime: int, alpha: int, w: str, w2: str, n: int,
                          precision: int, display: str = "block") -> Report:
        """
        Shuffle displays evaluated on the prime harmonic functional and on the
        adjoint functional, under both signs of shft_* and with and without
        the parity sign. The check passes when, for each functional, some
        variant vanishes to the threshold.
        """
        start = time.perf_counter()
        w, w2 = _word(w), _word(w2)
        for word in (w, w2):
            if word.letters and not word.ends_in_e1():
                raise InadmissiblePairError(f"word {word} ends in e0")
        if n < 1:
            raise ValueError("n must be positive")
        total_weight = w.weight + w2.weight + (n if display == "block" else 0)
        depth = w.depth + w2.depth + (1 if display == "block" else 0)
        inner_depth = max(depth - 1, 1)
        cutoff = max(total_weight, precision - 1)
        while cutoff + 1 - inner_depth - denominator_margin(prime, inner_depth, cutoff) < precision:
            cutoff += 1

        functionals = {
            'sigma': self._sigma_functional(prime, alpha, precision),
            'lambda': self._lambda_functional(prime, alpha, precision),
        }
        results: Dict[str, Dict[str, Optional[Union[int, str]]]] = {}
        passing: Dict[str, List[str]] = {}
        best: Optional[PAdic] = None
        for label, h in functionals.items():
            results[label] = {}
            passing[label] = []
            for shift_sign in (1, -1):
                for parity in (True, False):
                    variant = f"shift{'+' if shift_sign > 0 else '-'}{'/parity' if parity else ''}"
                    lhs, rhs = self._dmr_sides(w, w2, n, display, cutoff, shift_sign, parity)
                    defect = PAdic.exact_zero(prime)
                    for u, c in lhs.items():
                        defect = defect + h(u.letters).scale(c)
                    for letters, c in rhs.items():
                        if c:
                            defect = defect - h(letters).scale(c)
                    v = defect.certified_valuation()
                    results[label][variant] = "exact zero" if defect.is_exact_zero() else v
                    if defect.is_exact_zero() or (v is not None and v >= precision):
                        passing[label].append(variant)
                        if best is None or (defect.is_exact_zero() and not best.is_exact_zero()):
                            best = defect
        passed = all(passing.values())
        report = Report(
            "dmr_shuffle",
            {},
            CheckStatus.PASS if passed else CheckStatus.FAIL,
            defect_valuation=None if best is None else best.certified_valuation(),
            exact_zero=best is not None and best.is_exact_zero(),
            threshold=precision,
            informational=True,
            details={'variants': results, 'passing_variants': passing, 'weight_cutoff': cutoff},
        )
        report.millis = int((time.perf_counter() - start) * 1000)
        return report

    # ------------------------------------------------------------------
    # Ihara group and contraction
    # ------------------------------------------------------------------

    @staticmethod
    def random_series(rng: random.Random, prime: int, weight_cutoff: int,
                      density: float = 0.35, depth_cutoff: Optional[int] = None) -> NcSeries:
        """Sparse integral series with constant term 1 and p-power-weighted coefficients."""
        coeffs: Dict[str, Fraction] = {"": Fraction(1)}
        for weight in range(1, weight_cutoff + 1):
            for bits in range(2 ** weight):
                if rng.random() >= density:
                    continue
                letters = format(bits, f"0{weight}b")
                value = rng.randint(-prime ** 2, prime ** 2) * prime ** rng.randint(0, 2)
                if value:
                    coeffs[letters] = Fraction(value)
        return NcSeries(coeffs, weight_cutoff=weight_cutoff, depth_cutoff=depth_cutoff)

    @staticmethod
    def random_grouplike(rng: random.Random, prime: int, weight_cutoff: int) -> NcSeries:
        """exp of a random combination of e0, e1 and short brackets, p-power weighted."""
        e0 = NcSeries.monomial("0", weight_cutoff=weight_cutoff)
        e1 = NcSeries.monomial("1", weight_cutoff=weight_cutoff)
        b01 = lie_bracket(e0, e1)
        basis = [e0, e1, b01, lie_bracket(e0, b01), lie_bracket(e1, b01)]
        lie = NcSeries.zero(weight_cutoff=weight_cutoff)
        for element in basis:
            lie = lie + element.scale(rng.randint(-3, 3) * prime ** rng.randint(0, 1))
        return series_exp(lie)

    @guarded_check("ihara_group_law")
    def check_ihara_group_law(self, trials: int = 20, weight_cutoff: int = 5,
                              seed: int = 0) -> Report:
        """Associativity and two-sided inverses of the Ihara product, exactly."""
        rng = random.Random(seed)
        one = NcSeries.one(weight_cutoff=weight_cutoff)
        mismatches = []
        for trial in range(trials):
            a, b, c = (self.random_series(rng, 3, weight_cutoff, density=0.2) for _ in range(3))
            if ihara(ihara(a, b), c) != ihara(a, ihara(b, c)):
                mismatches.append(f"associativity, trial {trial}")
            grouplike = self.random_grouplike(rng, 3, weight_cutoff)
            for label, x in (("inverse", a), ("grouplike inverse", grouplike)):
                inverse = ihara_inverse(x)
                if ihara(x, inverse) != one or ihara(inverse, x) != one:
                    mismatches.append(f"{label}, trial {trial}")
        return _exact_report("ihara_group_law", mismatches, trials=trials)

    @guarded_check("contraction")
    def check_contraction_suite(self, prime: int, trials: int = 20, weight_cutoff: int = 6,
                                seed: int = 0, alpha0: int = 1, iterations: int = 3,
                                rate: Optional[int] = None) -> Report:
        """
        Profile inequalities for the Ihara product and psi(f) = ihara(g, tau(p^alpha0) f)
        on random grouplike series:

        - N(ihara(g, f)) >= closure(N(g)) (min,+) closure(N(f))
        - N(psi(f')^-1 o psi(f) - 1) >= N(f'^-1 o f - 1) raised by rate per weight
        - k steps of psi from two seeds gain k * rate over the starting difference

        rate is the claimed contraction rate and defaults to alpha0.
        """
        if alpha0 < 1:
            raise ValueError("psi contracts only for alpha0 >= 1")
        rate = alpha0 if rate is None else rate
        rng = random.Random(seed)
        lam = prime ** alpha0
        one = NcSeries.one(weight_cutoff=weight_cutoff)
        violations: List[str] = []

        def psi(g: NcSeries, f: NcSeries) -> NcSeries:
            return ihara(g, tau_scale(lam, f))

        for trial in range(trials):
            g = self.random_grouplike(rng, prime, weight_cutoff)
            f = self.random_grouplike(rng, prime, weight_cutoff)
            f2 = self.random_grouplike(rng, prime, weight_cutoff)

            g_closure = ValuationProfile.of_series(g, prime).closure()
            bound = g_closure.min_plus(ValuationProfile.of_series(f, prime).closure())
            product = ValuationProfile.of_series(ihara(g, f), prime)
            if not product.dominates(bound):
                violations.append(f"submultiplicative, trial {trial}: {product.violations(bound)}")

            before = ihara(ihara_inverse(f2), f) - one
            after = ihara(ihara_inverse(psi(g, f2)), psi(g, f)) - one
            bound = ValuationProfile.of_series(before, prime).shifted_by_weight(rate)
            contracted = ValuationProfile.of_series(after, prime)
            if not contracted.dominates(bound):
                violations.append(f"contraction, trial {trial}: {contracted.violations(bound)}")

        g = self.random_series(rng, prime, weight_cutoff)
        x = self.random_grouplike(rng, prime, weight_cutoff)
        y = self.random_grouplike(rng, prime, weight_cutoff)
        start = _min_valuation(list(ValuationProfile.of_series(x - y, prime).entries.values()))
        decay = {}
        for step in range(1, iterations + 1):
            x, y = psi(g, x), psi(g, y)
            low = _min_valuation(list(ValuationProfile.of_series(x - y, prime).entries.values()))
            decay[str(step)] = "infinite" if low is None else low
            if start is not None and low is not None and low < start + step * rate:
                violations.append(f"fixed point, step {step}: valuation {low}")
        return _exact_report("contraction", violations, trials=trials, fixed_point_decay=decay)


def _worse(a: PAdic, b: PAdic) -> PAdic:
    """The defect with the smaller certified valuation."""
    va, vb = a.certified_valuation(), b.certified_valuation()
    if va is None:
        return b
    if vb is None:
        return a
    return a if va <= vb else b
