#!/usr/bin/env python3
"""
Truncated noncommutative power series in e0, e1.

An NcSeries is a sparse map word -> coefficient over a coefficient ring,
truncated at a weight cutoff and optionally a depth cutoff. Series are
treated as immutable values: every operation returns a new series.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterable, Iterator, List, Mapping, Optional, Tuple, Union

from harmfrob.core.arith import PAdic, RationalField, rational_valuation
from harmfrob.core.words.word import Word

logger = logging.getLogger(__name__)

WordLike = Union[Word, str]


def _key(word: WordLike) -> str:
    if isinstance(word, Word):
        return word.letters
    if word == "∅":
        return ""
    return word


class NcSeries:
    """
    Element of ring<<e0, e1>> truncated at weight_cutoff (and depth_cutoff).

    Zero coefficients are never stored and words beyond the cutoffs are
    dropped on construction, so no operation can fabricate them.
    """

    def __init__(
        self,
        coeffs: Mapping[WordLike, Any],
        ring: Any = None,
        weight_cutoff: int = 8,
        depth_cutoff: Optional[int] = None,
    ):
        """
        Initialize a series.

        Args:
            coeffs: Map from words (Word or '0'/'1' strings) to coefficients
            ring: Coefficient ring, RationalField by default
            weight_cutoff: Largest stored weight N
            depth_cutoff: Largest stored depth D, or None for no bound
        """
        if weight_cutoff < 0:
            raise ValueError("weight_cutoff must be nonnegative")
        self.ring = ring if ring is not None else RationalField()
        self.weight_cutoff = weight_cutoff
        self.depth_cutoff = depth_cutoff
        self._coeffs: Dict[str, Any] = {}
        for word, value in coeffs.items():
            key = _key(word)
            if not self.admits(key):
                continue
            value = self.ring.coerce(value)
            if not self.ring.is_zero(value):
                self._coeffs[key] = value

    # ------------------------------------------------------------------
    # Construction helpers
    # ------------------------------------------------------------------

    @classmethod
    def _raw(cls, coeffs: Dict[str, Any], like: "NcSeries") -> "NcSeries":
        """Wrap an already filtered dict without re-checking it."""
        out = cls.__new__(cls)
        out.ring = like.ring
        out.weight_cutoff = like.weight_cutoff
        out.depth_cutoff = like.depth_cutoff
        out._coeffs = coeffs
        return out

    @classmethod
    def zero(cls, ring: Any = None, weight_cutoff: int = 8,
             depth_cutoff: Optional[int] = None) -> "NcSeries":
        return cls({}, ring, weight_cutoff, depth_cutoff)

    @classmethod
    def one(cls, ring: Any = None, weight_cutoff: int = 8,
            depth_cutoff: Optional[int] = None) -> "NcSeries":
        ring = ring if ring is not None else RationalField()
        return cls({"": ring.one()}, ring, weight_cutoff, depth_cutoff)

    @classmethod
    def monomial(cls, word: WordLike, coefficient: Any = 1, ring: Any = None,
                 weight_cutoff: int = 8, depth_cutoff: Optional[int] = None) -> "NcSeries":
        return cls({_key(word): coefficient}, ring, weight_cutoff, depth_cutoff)

    def like(self, coeffs: Mapping[WordLike, Any]) -> "NcSeries":
        """New series with the same ring and cutoffs."""
        return NcSeries(coeffs, self.ring, self.weight_cutoff, self.depth_cutoff)

    def admits(self, word: WordLike) -> bool:
        key = _key(word)
        if len(key) > self.weight_cutoff:
            return False
        return self.depth_cutoff is None or key.count("1") <= self.depth_cutoff

    # ------------------------------------------------------------------
    # Access
    # ------------------------------------------------------------------

    def __getitem__(self, word: WordLike) -> Any:
        return self._coeffs.get(_key(word), self.ring.zero())

    def __contains__(self, word: WordLike) -> bool:
        return _key(word) in self._coeffs

    def __len__(self) -> int:
        return len(self._coeffs)

    def keys(self) -> List[str]:
        return sorted(self._coeffs, key=lambda k: (len(k), k.count("1"), k))

    def items(self) -> Iterator[Tuple[Word, Any]]:
        """Words and coefficients in canonical order."""
        for key in self.keys():
            yield Word(key), self._coeffs[key]

    def raw_items(self) -> Iterable[Tuple[str, Any]]:
        return self._coeffs.items()

    @property
    def constant_term(self) -> Any:
        return self[""]

    def is_zero(self) -> bool:
        return not self._coeffs

    def max_weight(self) -> int:
        return max((len(k) for k in self._coeffs), default=0)

    # ------------------------------------------------------------------
    # Linear structure
    # ------------------------------------------------------------------

    def _check_compatible(self, other: "NcSeries") -> None:
        if self.weight_cutoff != other.weight_cutoff or self.depth_cutoff != other.depth_cutoff:
            raise ValueError(
                f"cutoff mismatch: ({self.weight_cutoff}, {self.depth_cutoff}) vs "
                f"({other.weight_cutoff}, {other.depth_cutoff})"
            )

    def __add__(self, other: "NcSeries") -> "NcSeries":
        self._check_compatible(other)
        out = dict(self._coeffs)
        for key, value in other._coeffs.items():
            total = out[key] + value if key in out else value
            if self.ring.is_zero(total):
                out.pop(key, None)
            else:
                out[key] = total
        return NcSeries._raw(out, self)

    def __neg__(self) -> "NcSeries":
        return NcSeries._raw({k: -v for k, v in self._coeffs.items()}, self)

    def __sub__(self, other: "NcSeries") -> "NcSeries":
        return self + (-other)

    def scale(self, factor: Any) -> "NcSeries":
        """Multiply every coefficient by a scalar."""
        out = {}
        for key, value in self._coeffs.items():
            product = value * factor
            if not self.ring.is_zero(product):
                out[key] = product
        return NcSeries._raw(out, self)

    def map_coefficients(self, fn) -> "NcSeries":
        """Apply fn(word_letters, coefficient) to every stored coefficient."""
        out = {}
        for key, value in self._coeffs.items():
            new = fn(key, value)
            if not self.ring.is_zero(new):
                out[key] = new
        return NcSeries._raw(out, self)

    def filter(self, predicate) -> "NcSeries":
        return NcSeries._raw({k: v for k, v in self._coeffs.items() if predicate(k)}, self)

    def truncate(self, weight_cutoff: int, depth_cutoff: Optional[int] = None) -> "NcSeries":
        return NcSeries(self._coeffs, self.ring, weight_cutoff, depth_cutoff)

    # ------------------------------------------------------------------
    # Concatenation product
    # ------------------------------------------------------------------

    def __mul__(self, other: Any) -> "NcSeries":
        if not isinstance(other, NcSeries):
            return self.scale(other)
        self._check_compatible(other)
        n_max = self.weight_cutoff
        d_max = self.depth_cutoff
        right = sorted(other._coeffs.items(), key=lambda kv: len(kv[0]))
        out: Dict[str, Any] = {}
        for k1, c1 in self._coeffs.items():
            room = n_max - len(k1)
            if room < 0:
                continue
            d1 = k1.count("1")
            for k2, c2 in right:
                if len(k2) > room:
                    break
                if d_max is not None and d1 + k2.count("1") > d_max:
                    continue
                key = k1 + k2
                value = c1 * c2
                out[key] = out[key] + value if key in out else value
        return NcSeries._raw({k: v for k, v in out.items() if not self.ring.is_zero(v)}, self)

    def __rmul__(self, other: Any) -> "NcSeries":
        return self.scale(other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NcSeries):
            return NotImplemented
        return (
            self.weight_cutoff == other.weight_cutoff
            and self.depth_cutoff == other.depth_cutoff
            and self._coeffs == other._coeffs
        )

    def __repr__(self) -> str:
        return (
            f"NcSeries({len(self._coeffs)} terms, ring={self.ring!r}, "
            f"N={self.weight_cutoff}, D={self.depth_cutoff})"
        )

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        return " + ".join(f"({self._coeffs[k]})*{k or '∅'}" for k in self.keys())


@dataclass
class ValuationProfile:
    """
    Minimum p-adic valuation of coefficients per (weight, depth).

    None stands for an infinite valuation (all coefficients zero).
    """
    prime: int
    weight_cutoff: int
    depth_cutoff: Optional[int] = None
    entries: Dict[Tuple[int, int], Optional[int]] = field(default_factory=dict)

    def __post_init__(self):
        for s, d in self.bidegrees():
            self.entries.setdefault((s, d), None)

    def bidegrees(self) -> Iterator[Tuple[int, int]]:
        for s in range(self.weight_cutoff + 1):
            top = s if self.depth_cutoff is None else min(s, self.depth_cutoff)
            for d in range(top + 1):
                yield s, d

    @classmethod
    def of_series(cls, series: NcSeries, prime: Optional[int] = None) -> "ValuationProfile":
        if prime is None:
            prime = getattr(series.ring, "prime", None)
        if prime is None:
            raise ValueError("a prime is required for a rational series")
        profile = cls(prime, series.weight_cutoff, series.depth_cutoff)
        for key, value in series.raw_items():
            if isinstance(value, PAdic):
                v = value.certified_valuation()
            else:
                v = rational_valuation(Fraction(value), prime)
            if v is None:
                continue
            slot = (len(key), key.count("1"))
            current = profile.entries.get(slot)
            profile.entries[slot] = v if current is None else min(current, v)
        return profile

    def __getitem__(self, bidegree: Tuple[int, int]) -> Optional[int]:
        return self.entries.get(bidegree)

    def is_infinite(self) -> bool:
        return all(v is None for v in self.entries.values())

    def dominates(self, other: "ValuationProfile") -> bool:
        """Pointwise self >= other, with None as +infinity."""
        for slot, bound in other.entries.items():
            mine = self.entries.get(slot)
            if mine is None or bound is None:
                if mine is not None and bound is None:
                    return False
                continue
            if mine < bound:
                return False
        return True

    def violations(self, other: "ValuationProfile") -> List[Tuple[int, int]]:
        """Bidegrees where self falls below other."""
        bad = []
        for slot, bound in other.entries.items():
            mine = self.entries.get(slot)
            if bound is None:
                if mine is not None:
                    bad.append(slot)
            elif mine is not None and mine < bound:
                bad.append(slot)
        return bad

    def shifted_by_weight(self, rate: int) -> "ValuationProfile":
        """Entry (s, d) raised by rate * s."""
        out = ValuationProfile(self.prime, self.weight_cutoff, self.depth_cutoff)
        for (s, d), v in self.entries.items():
            out.entries[(s, d)] = None if v is None else v + rate * s
        return out

    def closure(self) -> "ValuationProfile":
        """
        Superadditive closure over nonzero bidegrees, with (0, 0) set to 0.

        It bounds the profile of every product of pieces of the series,
        inverse included, when the constant term is a unit.
        """
        out = ValuationProfile(self.prime, self.weight_cutoff, self.depth_cutoff)
        out.entries[(0, 0)] = 0
        for s, d in self.bidegrees():
            if s == 0:
                continue
            best = self.entries.get((s, d))
            for s1 in range(1, s):
                for d1 in range(0, d + 1):
                    a = out.entries.get((s1, d1))
                    b = out.entries.get((s - s1, d - d1))
                    if a is None or b is None:
                        continue
                    if best is None or a + b < best:
                        best = a + b
            out.entries[(s, d)] = best
        return out

    def min_plus(self, other: "ValuationProfile") -> "ValuationProfile":
        """Min-plus convolution over weight and depth splits."""
        out = ValuationProfile(self.prime, self.weight_cutoff, self.depth_cutoff)
        for s, d in self.bidegrees():
            best = None
            for s1 in range(s + 1):
                for d1 in range(0, min(d, s1) + 1):
                    a = self.entries.get((s1, d1))
                    b = other.entries.get((s - s1, d - d1))
                    if a is None or b is None:
                        continue
                    if best is None or a + b < best:
                        best = a + b
            out.entries[(s, d)] = best
        return out

    def by_depth(self) -> Dict[int, Optional[int]]:
        """Depth-only profile: minimum over weights at each depth."""
        out: Dict[int, Optional[int]] = {}
        for (s, d), v in self.entries.items():
            current = out.get(d)
            if v is not None and (current is None or v < current):
                out[d] = v
            else:
                out.setdefault(d, current)
        return dict(sorted(out.items()))

    def to_dict(self) -> Dict[str, Optional[int]]:
        return {f"{s},{d}": v for (s, d), v in sorted(self.entries.items())}
