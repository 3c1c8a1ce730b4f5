#!/usr/bin/env python3
"""
Hopf and Ihara operations on words and truncated series.

Shuffle, quasi-shuffle (stuffle) and antipode act on single words or
compositions and return integer combinations as Counters. The series
operations take and return NcSeries and respect the series' cutoffs.
"""

import logging
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Any, Dict, Iterator, List, Optional, Tuple

from harmfrob.core.arith import PAdic, binom_general
from harmfrob.core.words.series import NcSeries, ValuationProfile, WordLike, _key
from harmfrob.core.words.word import CompositionIndex, Word
from harmfrob.errors import (
    ConstantTermError,
    NonInvertibleError,
    NotStabilizedError,
    PrecisionExhaustedError,
    WordShapeError,
)

logger = logging.getLogger(__name__)


# ----------------------------------------------------------------------
# Word combinatorics
# ----------------------------------------------------------------------

def all_words(weight: int) -> Iterator[str]:
    """Every word of the given weight, as letter strings, in lexicographic order."""
    for letters in product("01", repeat=weight):
        yield "".join(letters)


@lru_cache(maxsize=None)
def _shuffle_letters(a: str, b: str) -> Tuple[Tuple[str, int], ...]:
    if not a:
        return ((b, 1),)
    if not b:
        return ((a, 1),)
    out: Counter = Counter()
    for word, count in _shuffle_letters(a[1:], b):
        out[a[0] + word] += count
    for word, count in _shuffle_letters(a, b[1:]):
        out[b[0] + word] += count
    return tuple(out.items())


def shuffle(w: WordLike, w2: WordLike) -> Counter:
    """
    Shuffle product of two words.

    Args:
        w: First word
        w2: Second word

    Returns:
        Counter mapping each interleaving Word to its multiplicity
    """
    return Counter({Word(k): c for k, c in _shuffle_letters(_key(w), _key(w2))})


@lru_cache(maxsize=None)
def _stuffle_parts(a: Tuple[int, ...], b: Tuple[int, ...]) -> Tuple[Tuple[Tuple[int, ...], int], ...]:
    if not a:
        return ((b, 1),)
    if not b:
        return ((a, 1),)
    # the rightmost part is the innermost summation variable
    head_a, x = a[:-1], a[-1]
    head_b, y = b[:-1], b[-1]
    out: Counter = Counter()
    for parts, count in _stuffle_parts(head_a, b):
        out[parts + (x,)] += count
    for parts, count in _stuffle_parts(a, head_b):
        out[parts + (y,)] += count
    for parts, count in _stuffle_parts(head_a, head_b):
        out[parts + (x + y,)] += count
    return tuple(out.items())


def stuffle(first: CompositionIndex, second: CompositionIndex) -> Counter:
    """Quasi-shuffle product of two composition indices."""
    return Counter({
        CompositionIndex(parts): c for parts, c in _stuffle_parts(first.parts, second.parts)
    })


def antipode(w: WordLike) -> Tuple[int, Word]:
    """S(e_{i_n}...e_{i_1}) = (-1)^n e_{i_1}...e_{i_n}."""
    letters = _key(w)
    sign = -1 if len(letters) % 2 else 1
    return sign, Word(letters[::-1])


def s_y(index: CompositionIndex) -> Tuple[int, CompositionIndex]:
    """Sign (-1)^weight and reversal of the parts."""
    sign = -1 if index.weight % 2 else 1
    return sign, index.reversed()


# ----------------------------------------------------------------------
# Series algebra
# ----------------------------------------------------------------------

def _is_one(series: NcSeries, value: Any) -> bool:
    return series.ring.is_zero(value - series.ring.one())


def letter(series: NcSeries, letters: str) -> NcSeries:
    """Monomial with coefficient one, in the ring and cutoffs of series."""
    return NcSeries.monomial(letters, series.ring.one(), series.ring,
                             series.weight_cutoff, series.depth_cutoff)


def series_mul(f: NcSeries, g: NcSeries) -> NcSeries:
    return f * g


def series_inverse(f: NcSeries) -> NcSeries:
    """
    Inverse for the concatenation product.

    Writes f = c0 (1 + u) with u constant-free and sums the geometric
    series in -u up to the weight cutoff.
    """
    c0 = f.constant_term
    if f.ring.is_zero(c0):
        raise NonInvertibleError("constant term is zero")
    try:
        inv0 = f.ring.one() / c0
    except (PrecisionExhaustedError, ZeroDivisionError) as exc:
        raise NonInvertibleError(f"constant term {c0} is not invertible") from exc
    one = NcSeries.one(f.ring, f.weight_cutoff, f.depth_cutoff)
    minus_u = one - f.scale(inv0)
    result = one
    term = one
    for _ in range(f.weight_cutoff):
        term = term * minus_u
        if term.is_zero():
            break
        result = result + term
    return result.scale(inv0)


def pr_n(n: int, f: NcSeries) -> NcSeries:
    """Weight-n part of f."""
    return f.filter(lambda key: len(key) == n)


def tau_scale(lam: Any, f: NcSeries) -> NcSeries:
    """Multiply the coefficient of every weight-n word by lam^n."""
    if isinstance(lam, int):
        lam = Fraction(lam)
    powers: List[Any] = [1]
    for _ in range(f.max_weight()):
        powers.append(powers[-1] * lam)
    return f.map_coefficients(lambda key, c: c * powers[len(key)])


def substitute_e1(f: NcSeries, g: NcSeries) -> NcSeries:
    """
    Apply the homomorphism e0 -> e0, e1 -> g to f.

    Raises:
        ConstantTermError: if g has a nonzero constant term
    """
    if not g.ring.is_zero(g.constant_term):
        raise ConstantTermError("substituted series must have zero constant term")
    images: Dict[str, NcSeries] = {"": NcSeries.one(f.ring, f.weight_cutoff, f.depth_cutoff)}
    e0 = letter(f, "0")

    def image(key: str) -> NcSeries:
        if key not in images:
            parent = image(key[:-1])
            images[key] = parent * (e0 if key[-1] == "0" else g)
        return images[key]

    result = NcSeries.zero(f.ring, f.weight_cutoff, f.depth_cutoff)
    for key in f.keys():
        result = result + image(key).scale(f[key])
    return result


def adjoint_e1(g: NcSeries) -> NcSeries:
    """g^{-1} e1 g, truncated."""
    return series_inverse(g) * letter(g, "1") * g


def ihara(g: NcSeries, f: NcSeries) -> NcSeries:
    """
    Ihara product g . f(e0, g^{-1} e1 g).

    Raises:
        ConstantTermError: if either constant term is not 1
    """
    if not _is_one(g, g.constant_term) or not _is_one(f, f.constant_term):
        raise ConstantTermError("Ihara product needs constant terms equal to 1")
    return g * substitute_e1(f, adjoint_e1(g))


def ihara_inverse(g: NcSeries) -> NcSeries:
    """Two-sided inverse of g for the Ihara product, solved weight by weight."""
    one = NcSeries.one(g.ring, g.weight_cutoff, g.depth_cutoff)
    h = one
    for n in range(1, g.weight_cutoff + 1):
        h = h - pr_n(n, ihara(g, h) - one)
    return h


def lie_bracket(a: NcSeries, b: NcSeries) -> NcSeries:
    return a * b - b * a


def series_exp(lie: NcSeries) -> NcSeries:
    """Truncated exponential of a series without constant term."""
    if not lie.ring.is_zero(lie.constant_term):
        raise ConstantTermError("exponential needs a zero constant term")
    one = NcSeries.one(lie.ring, lie.weight_cutoff, lie.depth_cutoff)
    result = one
    term = one
    for k in range(1, lie.weight_cutoff + 1):
        term = (term * lie).scale(Fraction(1, k))
        if term.is_zero():
            break
        result = result + term
    return result


def series_log(f: NcSeries) -> NcSeries:
    """Truncated logarithm of a series with constant term 1."""
    if not _is_one(f, f.constant_term):
        raise ConstantTermError("logarithm needs constant term 1")
    u = f - NcSeries.one(f.ring, f.weight_cutoff, f.depth_cutoff)
    result = NcSeries.zero(f.ring, f.weight_cutoff, f.depth_cutoff)
    power = u
    for k in range(1, f.weight_cutoff + 1):
        if power.is_zero():
            break
        result = result + power.scale(Fraction(1 if k % 2 else -1, k))
        power = power * u
    return result


def shuffle_series(f: NcSeries, g: NcSeries) -> NcSeries:
    """Bilinear extension of the shuffle product, truncated."""
    out: Dict[str, Any] = {}
    for k1, c1 in f.raw_items():
        for k2, c2 in g.raw_items():
            if len(k1) + len(k2) > f.weight_cutoff:
                continue
            for word, count in _shuffle_letters(k1, k2):
                value = c1 * c2 * count
                out[word] = out[word] + value if word in out else value
    return f.like(out)


def shuffle_defects(f: NcSeries, max_weight: Optional[int] = None) -> List[Tuple[Word, Word]]:
    """Pairs (u, v) of nonempty words with f[u] f[v] != f[u sh v]."""
    top = f.weight_cutoff if max_weight is None else min(max_weight, f.weight_cutoff)
    bad = []
    for total in range(2, top + 1):
        for left in range(1, total):
            for u in all_words(left):
                for v in all_words(total - left):
                    if not f.admits(u + v):
                        continue
                    rhs = sum((f[w] * c for w, c in _shuffle_letters(u, v)), f.ring.zero())
                    if not f.ring.is_zero(f[u] * f[v] - rhs):
                        bad.append((Word(u), Word(v)))
    return bad


def is_grouplike(f: NcSeries, max_weight: Optional[int] = None) -> bool:
    """True if f[empty] = 1 and f satisfies the shuffle equation within the cutoff."""
    return _is_one(f, f.constant_term) and not shuffle_defects(f, max_weight)


# ----------------------------------------------------------------------
# Adjoint-side helpers
# ----------------------------------------------------------------------

def shft_star(w: WordLike, weight_cutoff: int, ring: Any = None,
              depth_cutoff: Optional[int] = None, sign: int = 1) -> NcSeries:
    """
    Replace each block e0^{n-1} e1 of w by e0^{n-1} (1 + sign*e0)^{-n} e1.

    Args:
        w: Word ending in e1 (or empty)
        weight_cutoff: Truncation weight of the result
        ring: Coefficient ring of the result
        depth_cutoff: Optional depth cutoff of the result
        sign: +1 for (1+e0)^{-n}, -1 for the (1-e0)^{-n} variant

    Raises:
        WordShapeError: if w ends in e0
    """
    composition = Word(_key(w)).to_composition()
    terms: Dict[str, Fraction] = {"": Fraction(1)}
    for n in composition.parts:
        grown: Dict[str, Fraction] = {}
        for prefix, c in terms.items():
            for k in range(0, weight_cutoff - len(prefix) - n + 1):
                key = prefix + "0" * (n - 1 + k) + "1"
                grown[key] = grown.get(key, Fraction(0)) + c * binom_general(-n, k) * sign ** k
        terms = grown
    return NcSeries(terms, ring, weight_cutoff, depth_cutoff)


def shft_star_series(f: NcSeries, sign: int = 1) -> NcSeries:
    """Linear extension of shft_star."""
    result = NcSeries.zero(f.ring, f.weight_cutoff, f.depth_cutoff)
    for key in f.keys():
        if key and key[-1] != "1":
            raise WordShapeError(f"word {key!r} ends in e0")
        image = shft_star(key, f.weight_cutoff, f.ring, f.depth_cutoff, sign)
        result = result + image.scale(f[key])
    return result


def limit_e0(f: NcSeries, w: WordLike, min_precision: int = 1) -> PAdic:
    """
    Limit of f[e0^l w] as l grows, read off at the cutoff.

    The value f[e0^L w] at L = N - weight(w) is returned truncated to the
    certified precision min(v(d_L) + 1, v(d_{L-1}) + 2, A), where d_l is
    the increment f[e0^l w] - f[e0^{l-1} w].

    Raises:
        NotStabilizedError: if no increment fits under the cutoff or the
            last increment has valuation below min_precision
    """
    tail = _key(w)
    top = f.weight_cutoff - len(tail)
    if top < 1:
        raise NotStabilizedError(f"cutoff {f.weight_cutoff} leaves no room before {tail or '∅'}")
    values = [f["0" * l + tail] for l in range(top + 1)]
    value = values[-1]
    if not isinstance(value, PAdic):
        raise TypeError("limit_e0 needs a series over a p-adic field")

    def increment_valuation(l: int) -> Optional[int]:
        return (values[l] - values[l - 1]).certified_valuation()

    last = increment_valuation(top)
    if last is not None and last < min_precision:
        raise NotStabilizedError(
            f"increment at e0^{top} {tail or '∅'} has valuation {last} < {min_precision}"
        )
    bounds = [] if last is None else [last + 1]
    if top >= 2:
        previous = increment_valuation(top - 1)
        if previous is not None:
            bounds.append(previous + 2)
    if value.precision is not None:
        bounds.append(value.precision)
    if not bounds:
        return value
    certified = min(bounds)
    logger.debug("limit at %s certified to p^%d", tail or "∅", certified)
    return value.with_precision(certified)


def valuation_profile(f: NcSeries, prime: Optional[int] = None) -> ValuationProfile:
    return ValuationProfile.of_series(f, prime)


def depth_profile(f: NcSeries, prime: Optional[int] = None) -> Dict[int, Optional[int]]:
    """Minimum valuation per depth over all weights."""
    return ValuationProfile.of_series(f, prime).by_depth()
