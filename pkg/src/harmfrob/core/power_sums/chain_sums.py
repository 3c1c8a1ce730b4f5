#!/usr/bin/env python3
"""
Chain sums with mixed-sign exponents and their reduction to polynomials
times unweighted harmonic sums.

A chain sum is sum_{lower<=u_1<...<u_r<m} u_r^{e_r} ... u_1^{e_1}. Every
nonnegative power is summed away by Faulhaber's formula; what remains is
a combination sum_J c_J(m) H_m(J) with H_m the unweighted harmonic sum.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Dict, Optional, Tuple

from harmfrob.core.power_sums.polynomials import PolyInM, power_sum_poly
from harmfrob.core.words.word import EMPTY_INDEX, CompositionIndex

logger = logging.getLogger(__name__)

_RawExpansion = Tuple[Tuple[Tuple[int, ...], Tuple[Tuple[int, Fraction], ...]], ...]


@dataclass(frozen=True)
class ChainSumSpec:
    """
    Strict chain lower <= u_1 < ... < u_r < m with exponents (e_r, ..., e_1).

    lower is 0 or 1; a negative innermost exponent needs lower = 1.
    """
    exponents: Tuple[int, ...]
    lower: int = 0

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(int(e) for e in self.exponents))
        if self.lower not in (0, 1):
            raise ValueError("lower bound must be 0 or 1")
        if self.lower == 0 and self.exponents and self.exponents[-1] < 0:
            raise ValueError("a negative innermost exponent needs lower bound 1")

    @property
    def length(self) -> int:
        return len(self.exponents)

    def evaluate(self, m: int) -> Fraction:
        """Brute-force value for a concrete upper bound m."""
        inner_first = self.exponents[::-1]
        total = Fraction(0)
        for chain in combinations(range(self.lower, m), len(inner_first)):
            term = Fraction(1)
            for u, e in zip(chain, inner_first):
                term *= Fraction(u) ** e
            total += term
        return total


@dataclass
class ChainExpansion:
    """sum_J polys[J](m) * H_m(J), with H_m unweighted."""
    polys: Dict[CompositionIndex, PolyInM] = field(default_factory=dict)

    def add(self, index: CompositionIndex, poly: PolyInM) -> None:
        total = self.polys[index] + poly if index in self.polys else poly
        if total.is_zero():
            self.polys.pop(index, None)
        else:
            self.polys[index] = total

    def items(self):
        return sorted(self.polys.items(), key=lambda kv: kv[0].sort_key())

    def evaluate(self, m: int, engine=None) -> Fraction:
        """Exact value at m, using unweighted harmonic sums from engine."""
        if engine is None:
            from harmfrob.core.harmonic.harmonic_engine import HarmonicEngine
            engine = HarmonicEngine()
        total = Fraction(0)
        for index, poly in self.polys.items():
            h = Fraction(1) if index.is_empty() else engine.har(m, index, weighted=False).value
            total += poly(m) * h
        return total

    def __len__(self) -> int:
        return len(self.polys)


def _free_power_sum(k: int) -> PolyInM:
    """sum_{0<u<t} u^k as a polynomial in t."""
    poly = power_sum_poly(k)
    return poly - PolyInM.constant(1) if k == 0 else poly


def _pack(out: Dict[Tuple[int, ...], PolyInM]) -> _RawExpansion:
    return tuple(
        (parts, tuple(poly.items())) for parts, poly in sorted(out.items()) if not poly.is_zero()
    )


@lru_cache(maxsize=None)
def _weighted_chain(k: int, parts: Tuple[int, ...]) -> _RawExpansion:
    """
    sum_{0<u<t} u^k H_u(J) as polynomials in t times H_t(J').

    For k < 0 this is H_t((-k, J)). Otherwise, with J = (n, J'),
    it equals Q_k(t) H_t(J) - sum_j rho_j G(j - n, J'), where
    Q_k(v + 1) = sum_j rho_j v^j.
    """
    if k < 0:
        return (((-k,) + parts, ((0, Fraction(1)),)),)
    q = _free_power_sum(k)
    out: Dict[Tuple[int, ...], PolyInM] = {parts: q}
    if parts:
        n, rest = parts[0], parts[1:]
        for j, rho in q.shift(1).items():
            for sub_parts, sub_poly in _weighted_chain(j - n, rest):
                piece = PolyInM(dict(sub_poly)) * (-rho)
                out[sub_parts] = out[sub_parts] + piece if sub_parts in out else piece
    return _pack(out)


def weighted_chain(k: int, index: CompositionIndex) -> ChainExpansion:
    """G(k, J) = sum_{0<u<t} u^k H_u(J) as a ChainExpansion in t."""
    expansion = ChainExpansion()
    for parts, poly in _weighted_chain(k, index.parts):
        expansion.add(CompositionIndex(parts), PolyInM(dict(poly)))
    return expansion


def eliminate_positive_powers(spec: ChainSumSpec) -> ChainExpansion:
    """
    Rewrite a chain sum as sum_J c_J(m) H_m(J).

    The innermost variable is summed first; each further variable u with
    exponent e turns c(u) H_u(J) into sum_a c_a G(e + a, J).

    Args:
        spec: Chain sum with exponents of any sign

    Returns:
        ChainExpansion equal to the chain sum for every m >= 0
    """
    current = ChainExpansion({EMPTY_INDEX: PolyInM.constant(1)})
    for position, e in enumerate(reversed(spec.exponents)):
        nxt = ChainExpansion()
        for index, poly in current.polys.items():
            for a, c in poly.items():
                for sub_index, sub_poly in weighted_chain(e + a, index).polys.items():
                    nxt.add(sub_index, sub_poly * c)
        if position == 0 and spec.lower == 0 and e == 0:
            # the u_1 = 0 term, 0^0 = 1
            nxt.add(EMPTY_INDEX, PolyInM.constant(1))
        current = nxt
    return current


def rewrite_chain(exponents: Tuple[int, ...], lower: int = 1) -> ChainExpansion:
    """eliminate_positive_powers for a bare exponent tuple, memoized."""
    return ChainExpansion(dict(_rewrite_cached(tuple(exponents), lower)))


@lru_cache(maxsize=None)
def _rewrite_cached(exponents: Tuple[int, ...], lower: int):
    return tuple(eliminate_positive_powers(ChainSumSpec(exponents, lower)).polys.items())
