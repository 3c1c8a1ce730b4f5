#!/usr/bin/env python3
"""
Symbolic expansion of har_{q m}(I), q = p^alpha, in terms of m, har_m and har_q.

Each summation variable is divided by q: m_i = q u_i + r_i. Variables
sharing the same quotient u form a block; inside a block only the
innermost variable may have r_i = 0. A variable with r_i != 0 is expanded
binomially, (r + q u)^{-n} = sum_l C(-n, l) r^{-n-l} (q u)^l; the r-chains
of a block give har_q of a composition and the u-chain is rewritten by
eliminate_positive_powers. The powers of q cancel exactly.
"""

import logging
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Any, Callable, Dict, Iterator, List, Tuple

from harmfrob.core.arith import binom_general
from harmfrob.core.power_sums.chain_sums import rewrite_chain
from harmfrob.core.power_sums.polynomials import PolyInM
from harmfrob.core.words.word import EMPTY_INDEX, CompositionIndex
from harmfrob.errors import CutoffTooSmallError

logger = logging.getLogger(__name__)

HarProduct = Tuple[CompositionIndex, ...]
AdjointCombination = Dict[HarProduct, Fraction]


def _show(index: CompositionIndex) -> str:
    return str(index) or "∅"


@dataclass(frozen=True)
class SigmaTerm:
    """coeff * m^m_power * har_m(har_m_index) * prod har_q(J) over har_q_indices."""
    coeff: Fraction
    m_power: int
    har_m_index: CompositionIndex
    har_q_indices: HarProduct

    @property
    def polynomial(self) -> PolyInM:
        return PolyInM.monomial(self.m_power, self.coeff)

    @property
    def har_q_weight(self) -> int:
        return sum(j.weight for j in self.har_q_indices)

    def render(self) -> str:
        pieces = [f"m^{self.m_power}", f"har_m({_show(self.har_m_index)})"]
        pieces.extend(f"har_pa({_show(j)})" for j in self.har_q_indices)
        pieces.append(str(self.coeff))
        return " * ".join(pieces)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'coeff': str(self.coeff),
            'm_power': self.m_power,
            'har_m': str(self.har_m_index),
            'har_pa': [str(j) for j in self.har_q_indices],
        }


def max_valuation_below(prime: int, m: int) -> int:
    """max_{0<u<m} v_p(u), 0 when the range is empty."""
    top = 0
    power = prime
    while power < m:
        top += 1
        power *= prime
    return top


@dataclass
class SigmaExpansion:
    """Weight-truncated expansion of har_{q m}(index)."""
    index: CompositionIndex
    weight_cutoff: int
    terms: List[SigmaTerm] = field(default_factory=list)

    def __iter__(self) -> Iterator[SigmaTerm]:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def grading_violations(self) -> List[SigmaTerm]:
        """
        Terms breaking the weight filtration.

        Every term must satisfy 0 <= m_power, weight(har_m) <= weight(I),
        har_q weight <= cutoff and m_power + depth(har_m) <= har_q weight + depth(I).
        """
        w = self.index.weight
        d = self.index.depth
        bad = []
        for term in self.terms:
            if (
                term.m_power < 0
                or term.har_m_index.weight > w
                or term.har_q_weight > self.weight_cutoff
                or term.m_power + term.har_m_index.depth > term.har_q_weight + d
            ):
                bad.append(term)
        return bad

    def evaluate(self, m: int, har_m: Callable[[CompositionIndex], Any],
                 har_q: Callable[[CompositionIndex], Any]) -> Any:
        """Value at m with caller-supplied har_m and har_q evaluators."""
        total = Fraction(0)
        for term in self.terms:
            value = har_m(term.har_m_index) if not term.har_m_index.is_empty() else Fraction(1)
            if value == 0:
                continue
            value = value * (Fraction(m) ** term.m_power * term.coeff)
            for j in term.har_q_indices:
                value = value * har_q(j)
            total = value + total
        return total

    def evaluate_exact(self, prime: int, alpha: int, m: int, engine) -> Fraction:
        """Exact rational value at m with q = prime^alpha."""
        q = prime ** alpha
        har_q_cache: Dict[CompositionIndex, Fraction] = {}
        har_m_cache: Dict[CompositionIndex, Fraction] = {}

        def har_q(j: CompositionIndex) -> Fraction:
            if j not in har_q_cache:
                har_q_cache[j] = engine.har(q, j).value
            return har_q_cache[j]

        def har_m(j: CompositionIndex) -> Fraction:
            if j not in har_m_cache:
                har_m_cache[j] = engine.har(m, j).value
            return har_m_cache[j]

        return self.evaluate(m, har_m, har_q)

    def tail_bound(self, prime: int, m: int) -> int:
        """Certified lower bound for v_p(exact - truncated) at m."""
        return self.weight_cutoff + 1 - self.index.weight * max_valuation_below(prime, m)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'index': str(self.index),
            'weight_cutoff': self.weight_cutoff,
            'terms': [t.to_dict() for t in self.terms],
        }


def _distributions(total: int, slots: int) -> Iterator[Tuple[int, ...]]:
    if slots == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _distributions(total - first, slots - 1):
            yield (first,) + rest


def _block_patterns(depth: int) -> Iterator[List[Tuple[int, int, bool]]]:
    """Blocks (start, stop, has_zero) over variables numbered innermost first."""
    for cuts in product((False, True), repeat=max(depth - 1, 0)):
        bounds = [0] + [i + 1 for i, cut in enumerate(cuts) if cut] + [depth]
        spans = list(zip(bounds[:-1], bounds[1:]))
        for zeros in product((False, True), repeat=len(spans)):
            yield [(a, b, z) for (a, b), z in zip(spans, zeros)]


_expansion_cache: Dict[Tuple[CompositionIndex, int], SigmaExpansion] = {}
_expansion_lock = threading.Lock()


def expand_sigma(index: CompositionIndex, weight_cutoff: int) -> SigmaExpansion:
    """
    Expansion of har_{q m}(index) keeping har_q products of total weight <= cutoff.

    Args:
        index: Composition (n_d, ..., n_1)
        weight_cutoff: Truncation weight N, at least weight(index)

    Returns:
        SigmaExpansion, exact at m = 1

    Raises:
        CutoffTooSmallError: if weight_cutoff < weight(index)
    """
    w = index.weight
    if weight_cutoff < w:
        raise CutoffTooSmallError(f"weight cutoff {weight_cutoff} below weight {w} of {index}")
    key = (index, weight_cutoff)
    cached = _expansion_cache.get(key)
    if cached is not None:
        return cached

    exponents_inner_first = index.parts[::-1]
    d = index.depth
    merged: Dict[Tuple[int, CompositionIndex, HarProduct], Fraction] = {}
    if d == 0:
        merged[(0, EMPTY_INDEX, ())] = Fraction(1)

    for blocks in (_block_patterns(d) if d else ()):
        zero_vars = {a for a, _, z in blocks if z}
        nonzero = [i for i in range(d) if i not in zero_vars]
        budget = weight_cutoff - sum(exponents_inner_first[i] for i in nonzero)
        if budget < 0:
            continue
        for extra in range(budget + 1):
            for shifts in _distributions(extra, len(nonzero)):
                l_of = dict(zip(nonzero, shifts))
                coeff = Fraction(1)
                for i in nonzero:
                    coeff *= binom_general(-exponents_inner_first[i], l_of[i])
                har_q: List[CompositionIndex] = []
                chain: List[int] = []
                for a, b, has_zero in blocks:
                    parts = tuple(
                        exponents_inner_first[i] + l_of[i]
                        for i in range(b - 1, a - 1, -1)
                        if i in l_of
                    )
                    if parts:
                        har_q.append(CompositionIndex(parts))
                    e = sum(l_of[i] for i in range(a, b) if i in l_of)
                    if has_zero:
                        e -= exponents_inner_first[a]
                    chain.append(e)
                product_key = tuple(sorted(har_q, key=lambda j: j.sort_key()))
                outer_first = tuple(reversed(chain))
                pieces = [rewrite_chain(outer_first)]
                if not blocks[0][2] and chain[0] == 0:
                    # first block sitting at u = 0
                    pieces.append(rewrite_chain(outer_first[:-1]))
                for piece in pieces:
                    for j_index, poly in piece.polys.items():
                        for a_pow, c in poly.items():
                            slot = (w + a_pow - j_index.weight, j_index, product_key)
                            merged[slot] = merged.get(slot, Fraction(0)) + coeff * c

    terms = [
        SigmaTerm(c, m_power, j_index, product_key)
        for (m_power, j_index, product_key), c in merged.items()
        if c != 0
    ]
    terms.sort(key=lambda t: (
        t.har_q_weight, t.m_power, t.har_m_index.sort_key(),
        tuple(j.sort_key() for j in t.har_q_indices),
    ))
    expansion = SigmaExpansion(index, weight_cutoff, terms)
    logger.debug("expanded har(%s) at cutoff %d into %d terms", index, weight_cutoff, len(terms))
    with _expansion_lock:
        return _expansion_cache.setdefault(key, expansion)


def extract_adjoint(expansion: SigmaExpansion) -> Dict[Tuple[int, CompositionIndex], AdjointCombination]:
    """
    Coefficients of m^{b + weight(I)} with empty har_m factor, for b + weight(I) <= cutoff.

    Returns:
        Map (b, I) -> {har_q product: rational coefficient}
    """
    w = expansion.index.weight
    out: Dict[Tuple[int, CompositionIndex], AdjointCombination] = {}
    for term in expansion.terms:
        if not term.har_m_index.is_empty() or term.m_power > expansion.weight_cutoff:
            continue
        b = term.m_power - w
        slot = out.setdefault((b, expansion.index), {})
        slot[term.har_q_indices] = slot.get(term.har_q_indices, Fraction(0)) + term.coeff
    return {k: {h: c for h, c in v.items() if c != 0} for k, v in sorted(
        out.items(), key=lambda kv: kv[0][0])}


def denominator_margin(prime: int, depth: int, weight_cutoff: int) -> int:
    """
    Bound on the p-adic denominators of expansion coefficients.

    depth(depth+1)/2 * (1 + floor(log_p(N + depth + 1))).
    """
    top = weight_cutoff + depth + 1
    log = 0
    power = prime
    while power <= top:
        log += 1
        power *= prime
    return depth * (depth + 1) // 2 * (1 + log)


def cutoff_for_precision(prime: int, index: CompositionIndex, b: int, precision: int) -> int:
    """Smallest N >= b + weight with N + 1 - margin(N) >= precision."""
    n = b + index.weight
    while n + 1 - denominator_margin(prime, index.depth, n) < precision:
        n += 1
    return n
