#!/usr/bin/env python3
"""
Coefficient rings for series and harmonic sums.

A ring object knows how to make its zero and one, how to bring an exact
rational in, and how to recognise zero. Elements themselves are plain
Fractions or PAdic values and use the ordinary arithmetic operators.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional, Union

from harmfrob.core.arith.padic import PAdic
from harmfrob.core.arith.rational import rational_valuation

Element = Union[Fraction, PAdic]


class RationalField:
    """Exact rationals."""

    name = "Q"

    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def coerce(self, value: Any) -> Fraction:
        if isinstance(value, PAdic):
            raise TypeError("cannot bring a p-adic value into the rational field")
        return Fraction(value)

    def is_zero(self, value: Element) -> bool:
        return value == 0

    def valuation(self, value: Element, prime: int) -> Optional[int]:
        return rational_valuation(value, prime)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash(self.name)

    def __repr__(self) -> str:
        return "RationalField()"


@dataclass(frozen=True)
class PAdicField:
    """
    Q_p at a working absolute precision.

    Exact rationals are reduced modulo p^precision on the way in.
    """
    prime: int
    precision: int

    @property
    def name(self) -> str:
        return f"Q_{self.prime}"

    def zero(self) -> PAdic:
        return PAdic.zero(self.prime, self.precision)

    def one(self) -> PAdic:
        return PAdic.from_rational(1, self.prime, self.precision)

    def coerce(self, value: Any) -> PAdic:
        if isinstance(value, PAdic):
            if value.prime != self.prime:
                raise ValueError(f"prime mismatch: {value.prime} vs {self.prime}")
            return value
        return PAdic.from_rational(value, self.prime, self.precision)

    def is_zero(self, value: Element) -> bool:
        if isinstance(value, PAdic):
            return value.is_zero()
        return value == 0

    def valuation(self, value: Element, prime: Optional[int] = None) -> Optional[int]:
        if isinstance(value, PAdic):
            return value.valuation
        return rational_valuation(value, self.prime)


def default_working_precision(target: int, alpha: int, weight: int) -> int:
    """
    Working absolute precision for a weight-w computation at level alpha.

    Terms 1/m_i^{n_i} reach valuation -alpha*n_i; the margin 4 absorbs
    Bernoulli denominators and accumulated cancellation.
    """
    return target + 2 * alpha * weight + 4
