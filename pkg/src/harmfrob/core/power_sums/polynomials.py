#!/usr/bin/env python3
"""
Polynomials in m with rational coefficients, Faulhaber power sums and
the coefficients B_b^{l_r,...,l_1} of iterated strict-chain power sums.
"""

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Dict, Iterator, Sequence, Tuple, Union

from harmfrob.core.arith import bernoulli

Number = Union[int, Fraction]


@dataclass
class PolyInM:
    """A finitely supported polynomial sum_k c_k m^k. Treated as immutable."""
    coefficients: Dict[int, Fraction] = field(default_factory=dict)
    symbol: str = "m"

    def __post_init__(self):
        self.coefficients = {
            int(k): Fraction(c) for k, c in self.coefficients.items() if c != 0
        }
        if any(k < 0 for k in self.coefficients):
            raise ValueError("negative powers are not polynomial")

    @classmethod
    def constant(cls, value: Number) -> "PolyInM":
        return cls({0: Fraction(value)})

    @classmethod
    def monomial(cls, power: int, coefficient: Number = 1) -> "PolyInM":
        return cls({power: Fraction(coefficient)})

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return max(self.coefficients, default=-1)

    def is_zero(self) -> bool:
        return not self.coefficients

    def coefficient(self, power: int) -> Fraction:
        return self.coefficients.get(power, Fraction(0))

    def items(self) -> Iterator[Tuple[int, Fraction]]:
        return iter(sorted(self.coefficients.items()))

    def __call__(self, m):
        """Evaluate by Horner's rule at an exact number."""
        result = 0
        for k in range(self.degree, -1, -1):
            result = result * m + self.coefficient(k)
        return result

    def __add__(self, other: "PolyInM") -> "PolyInM":
        out = dict(self.coefficients)
        for k, c in other.coefficients.items():
            out[k] = out.get(k, Fraction(0)) + c
        return PolyInM(out, self.symbol)

    def __neg__(self) -> "PolyInM":
        return PolyInM({k: -c for k, c in self.coefficients.items()}, self.symbol)

    def __sub__(self, other: "PolyInM") -> "PolyInM":
        return self + (-other)

    def __mul__(self, other: Union["PolyInM", Number]) -> "PolyInM":
        if not isinstance(other, PolyInM):
            return PolyInM({k: c * other for k, c in self.coefficients.items()}, self.symbol)
        out: Dict[int, Fraction] = {}
        for k1, c1 in self.coefficients.items():
            for k2, c2 in other.coefficients.items():
                out[k1 + k2] = out.get(k1 + k2, Fraction(0)) + c1 * c2
        return PolyInM(out, self.symbol)

    __rmul__ = __mul__

    def shift(self, offset: int = 1) -> "PolyInM":
        """The polynomial m -> p(m + offset)."""
        out: Dict[int, Fraction] = {}
        for k, c in self.coefficients.items():
            for j in range(k + 1):
                out[j] = out.get(j, Fraction(0)) + c * comb(k, j) * Fraction(offset) ** (k - j)
        return PolyInM(out, self.symbol)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyInM):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        pieces = []
        for k, c in sorted(self.coefficients.items(), reverse=True):
            if k == 0:
                pieces.append(f"{c}")
            elif k == 1:
                pieces.append(f"{c}*{self.symbol}")
            else:
                pieces.append(f"{c}*{self.symbol}^{k}")
        return " + ".join(pieces)


_power_sum_lock = threading.Lock()
_power_sum_cache: Dict[int, PolyInM] = {}


def power_sum_poly(l: int) -> PolyInM:
    """
    Faulhaber polynomial of sum_{0<=u<m} u^l.

    With B_1 = -1/2 the coefficient of m^b is (1/(l+1)) C(l+1, b) B_{l+1-b}.
    """
    if l < 0:
        raise ValueError("l must be >= 0")
    cached = _power_sum_cache.get(l)
    if cached is not None:
        return cached
    poly = PolyInM({
        b: Fraction(comb(l + 1, b), l + 1) * bernoulli(l + 1 - b) for b in range(1, l + 2)
    })
    with _power_sum_lock:
        return _power_sum_cache.setdefault(l, poly)


@lru_cache(maxsize=None)
def _chain_power_sum(exponents: Tuple[int, ...]) -> Tuple[Tuple[int, Fraction], ...]:
    # exponents outermost first; sum innermost first
    poly = PolyInM.constant(1)
    for l in reversed(exponents):
        nxt = PolyInM()
        for k, c in poly.coefficients.items():
            nxt = nxt + power_sum_poly(l + k) * c
        poly = nxt
    return tuple(poly.items())


def chain_power_sum(exponents: Sequence[int]) -> PolyInM:
    """
    Polynomial in m of sum_{0<=u_1<...<u_r<m} u_r^{l_r} ... u_1^{l_1}.

    Args:
        exponents: Nonnegative (l_r, ..., l_1), outermost first
    """
    exponents = tuple(int(l) for l in exponents)
    if any(l < 0 for l in exponents):
        raise ValueError("chain power sums take nonnegative exponents")
    return PolyInM(dict(_chain_power_sum(exponents)))


def b_coeff(exponents: Sequence[int], b: int) -> Fraction:
    """
    B_b^{l_r,...,l_1}: coefficient of m^b in chain_power_sum(exponents).

    Raises:
        ValueError: if b is outside 1..sum(l) + r
    """
    exponents = tuple(exponents)
    top = sum(exponents) + len(exponents)
    if not 1 <= b <= top:
        raise ValueError(f"b = {b} outside 1..{top} for exponents {exponents}")
    return chain_power_sum(exponents).coefficient(b)


def b_coeff_closed_form(l: int, b: int) -> Fraction:
    """Depth-one closed form (1/(l+1)) C(l+1, b) B_{l+1-b}."""
    if not 1 <= b <= l + 1:
        raise ValueError(f"b = {b} outside 1..{l + 1}")
    return Fraction(comb(l + 1, b), l + 1) * bernoulli(l + 1 - b)
