#!/usr/bin/env python3
"""
Fixed-precision p-adic numbers with certified precision tracking.

A nonzero PAdic is p^valuation * unit, known modulo p^precision, where
unit is a residue coprime to p modulo p^(precision - valuation). Zero
comes in two kinds: the exact zero (valuation and precision both None)
and zero known only to a given absolute precision.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from harmfrob.errors import InversionOfZeroError, PrecisionExhaustedError

Scalar = Union[int, Fraction]


def integer_valuation(n: int, p: int) -> int:
    """Return v_p(n) for a nonzero integer n."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def split_rational(q: Fraction, p: int) -> Tuple[int, int, int]:
    """
    Split a nonzero rational as p^v * a / b with a, b coprime to p.

    Returns:
        Tuple (v, a, b) with b > 0
    """
    num, den = q.numerator, q.denominator
    v_num = integer_valuation(num, p)
    v_den = integer_valuation(den, p)
    return v_num - v_den, num // p ** v_num, den // p ** v_den


@dataclass(frozen=True)
class PAdic:
    """
    A p-adic number with certified absolute precision.

    The precision propagation rules are the standard linear ones:
    addition keeps the smaller absolute precision, multiplication gives
    min(A1 + v2, A2 + v1), inversion gives A - 2v.

    Only zero can be exact. Mixing a nonzero int or Fraction into an
    exact zero raises PrecisionExhaustedError, since there is no precision
    to place it at; start sums from PAdic.zero(p, precision) instead.
    """
    prime: int
    valuation: Optional[int]
    unit: int
    precision: Optional[int]

    def __post_init__(self):
        if self.prime < 2:
            raise ValueError(f"prime must be at least 2, got {self.prime}")
        if self.valuation is None:
            if self.unit != 0:
                raise ValueError("zero must carry unit 0")
            return
        if self.precision is None:
            raise ValueError("only the exact zero may have unbounded precision")
        if self.precision <= self.valuation:
            raise ValueError(
                f"precision {self.precision} must exceed valuation {self.valuation}"
            )
        if self.unit % self.prime == 0:
            raise ValueError("unit must be coprime to the prime")
        if not 0 < self.unit < self.prime ** (self.precision - self.valuation):
            raise ValueError("unit must be reduced modulo p^(precision - valuation)")

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    @classmethod
    def exact_zero(cls, prime: int) -> "PAdic":
        return cls(prime, None, 0, None)

    @classmethod
    def zero(cls, prime: int, precision: int) -> "PAdic":
        """Zero known modulo p^precision."""
        return cls(prime, None, 0, precision)

    @classmethod
    def from_rational(
        cls, value: Scalar, prime: int, precision: int, relative: bool = False
    ) -> "PAdic":
        """
        Reduce an exact rational to a PAdic.

        Args:
            value: Integer or Fraction
            prime: The prime p
            precision: Absolute precision A, or relative precision when
                relative is True
            relative: Interpret precision as digits beyond the valuation

        Returns:
            PAdic equal to value modulo p^A (exact zero for value 0)
        """
        q = Fraction(value)
        if q == 0:
            return cls.exact_zero(prime)
        v, a, b = split_rational(q, prime)
        absolute = v + precision if relative else precision
        if absolute <= v:
            return cls.zero(prime, absolute)
        modulus = prime ** (absolute - v)
        unit = (a * pow(b, -1, modulus)) % modulus
        return cls(prime, v, unit, absolute)

    @classmethod
    def from_digits(
        cls, prime: int, valuation: int, digits: List[int], precision: int
    ) -> "PAdic":
        """Rebuild from little-endian base-p digits of the unit."""
        unit = 0
        for digit in reversed(digits):
            unit = unit * prime + digit
        return cls(prime, valuation, unit, precision)

    # ------------------------------------------------------------------
    # Inspection
    # ------------------------------------------------------------------

    def is_zero(self) -> bool:
        return self.valuation is None

    def is_exact_zero(self) -> bool:
        return self.valuation is None and self.precision is None

    @property
    def relative_precision(self) -> Optional[int]:
        if self.valuation is None or self.precision is None:
            return None
        return self.precision - self.valuation

    def certified_valuation(self) -> Optional[int]:
        """Valuation, or the precision for a zero known to finite precision."""
        if self.valuation is not None:
            return self.valuation
        return self.precision

    def digits(self) -> List[int]:
        """Little-endian base-p digits of the unit, padded to the relative precision."""
        if self.valuation is None:
            return []
        out = []
        u = self.unit
        for _ in range(self.precision - self.valuation):
            u, d = divmod(u, self.prime)
            out.append(d)
        return out

    def lift(self) -> Fraction:
        """Canonical rational representative p^v * unit."""
        if self.valuation is None:
            return Fraction(0)
        return Fraction(self.unit) * Fraction(self.prime) ** self.valuation

    def with_precision(self, precision: int) -> "PAdic":
        """Forget digits beyond absolute precision (never gains precision)."""
        if self.precision is not None and precision >= self.precision:
            return self
        if self.valuation is None:
            return PAdic.zero(self.prime, precision)
        return PAdic.from_rational(self.lift(), self.prime, precision)

    def agrees_with(self, other: Union["PAdic", Scalar], precision: int) -> bool:
        """True if self - other vanishes modulo p^precision."""
        diff = self - other
        v = diff.certified_valuation()
        return v is None or v >= precision

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def _coerce(self, other: Union["PAdic", Scalar]) -> "PAdic":
        if isinstance(other, PAdic):
            if other.prime != self.prime:
                raise ValueError(f"prime mismatch: {self.prime} vs {other.prime}")
            return other
        if isinstance(other, (int, Fraction)):
            if self.precision is None:
                if Fraction(other) == 0:
                    return PAdic.exact_zero(self.prime)
                raise PrecisionExhaustedError(
                    "cannot place an exact rational next to an exact zero "
                    "without a working precision"
                )
            return PAdic.from_rational(other, self.prime, self.precision)
        return NotImplemented

    @staticmethod
    def _normalize(prime: int, v0: int, x: int, precision: int) -> "PAdic":
        if x == 0:
            return PAdic.zero(prime, precision)
        k = integer_valuation(x, prime)
        v = v0 + k
        return PAdic(prime, v, (x // prime ** k) % prime ** (precision - v), precision)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_exact_zero():
            return other
        if other.is_exact_zero():
            return self
        p = self.prime
        precision = min(self.precision, other.precision)
        terms = [
            (x.valuation, x.unit)
            for x in (self, other)
            if x.valuation is not None and x.valuation < precision
        ]
        if not terms:
            return PAdic.zero(p, precision)
        v0 = min(v for v, _ in terms)
        total = sum(u * p ** (v - v0) for v, u in terms) % p ** (precision - v0)
        return PAdic._normalize(p, v0, total, precision)

    __radd__ = __add__

    def __neg__(self) -> "PAdic":
        if self.valuation is None:
            return self
        modulus = self.prime ** (self.precision - self.valuation)
        return PAdic(self.prime, self.valuation, (-self.unit) % modulus, self.precision)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.prime
        if self.is_exact_zero() or other.is_exact_zero():
            return PAdic.exact_zero(p)
        if self.valuation is None or other.valuation is None:
            # a zero to precision A behaves like valuation >= A
            v1 = self.certified_valuation()
            v2 = other.certified_valuation()
            precision = min(self.precision + v2, other.precision + v1)
            return PAdic.zero(p, precision)
        v = self.valuation + other.valuation
        precision = min(self.precision + other.valuation, other.precision + self.valuation)
        return PAdic(p, v, (self.unit * other.unit) % p ** (precision - v), precision)

    __rmul__ = __mul__

    def scale(self, factor: Scalar) -> "PAdic":
        """Multiply by an exactly known rational; precision shifts by its valuation."""
        q = Fraction(factor)
        p = self.prime
        if q == 0 or self.is_exact_zero():
            return PAdic.exact_zero(p)
        vq, a, b = split_rational(q, p)
        if self.valuation is None:
            return PAdic.zero(p, self.precision + vq)
        modulus = p ** (self.precision - self.valuation)
        unit = (self.unit * a * pow(b, -1, modulus)) % modulus
        return PAdic(p, self.valuation + vq, unit, self.precision + vq)

    def inverse(self) -> "PAdic":
        if self.is_exact_zero():
            raise InversionOfZeroError("inversion of exact zero")
        if self.valuation is None:
            raise PrecisionExhaustedError(
                f"cannot invert zero known only modulo p^{self.precision}"
            )
        relative = self.precision - self.valuation
        modulus = self.prime ** relative
        return PAdic(
            self.prime,
            -self.valuation,
            pow(self.unit, -1, modulus),
            self.precision - 2 * self.valuation,
        )

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise InversionOfZeroError("division by exact zero")
            return self.scale(1 / Fraction(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent: int) -> "PAdic":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        if exponent == 0:
            digits = self.relative_precision
            if digits is None:
                raise PrecisionExhaustedError("zero to the power 0 is not certified")
            return PAdic.from_rational(1, self.prime, digits)
        result: Optional[PAdic] = None
        base = self
        while exponent:
            if exponent & 1:
                result = base if result is None else result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __repr__(self) -> str:
        return (
            f"PAdic(p={self.prime}, v={self.valuation}, unit={self.unit}, "
            f"A={self.precision})"
        )

    def __str__(self) -> str:
        if self.is_exact_zero():
            return "0 (exact)"
        if self.valuation is None:
            return f"0 + O({self.prime}^{self.precision})"
        digits = ",".join(str(d) for d in self.digits())
        return f"{self.prime}^{self.valuation} * ({digits}) + O({self.prime}^{self.precision})"


def padic_arithmetic(op: str, a: PAdic, b: Optional[PAdic] = None) -> PAdic:
    """
    Dispatch one of add, mul, neg, inv.

    Args:
        op: Operation name
        a: First operand
        b: Second operand for the binary operations

    Returns:
        Result with certified precision
    """
    if op == "neg":
        return -a
    if op == "inv":
        return a.inverse()
    if b is None:
        raise ValueError(f"operation {op!r} needs two operands")
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown p-adic operation: {op!r}")
