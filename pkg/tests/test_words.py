#!/usr/bin/env python3
"""
Tests for words, composition indices and the shuffle and stuffle products.
"""

from itertools import combinations
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from harmfrob.core.words import (
    CompositionIndex,
    Word,
    antipode,
    compositions,
    s_y,
    shuffle,
    stuffle,
)
from harmfrob.errors import WordShapeError

words = st.text(alphabet="01", max_size=5)


def test_word_shape():
    word = Word("0011")
    assert word.weight == 4
    assert word.depth == 2
    assert word.ends_in_e1()
    assert word.leading_e0() == 2
    assert word.to_composition() == CompositionIndex((3, 1))
    with pytest.raises(ValueError):
        Word("012")


def test_word_ending_in_e0_has_no_composition():
    with pytest.raises(WordShapeError):
        Word("10").to_composition()


def test_composition_parse_and_word():
    index = CompositionIndex.parse("2,1")
    assert index.parts == (2, 1)
    assert index.weight == 3
    assert index.depth == 2
    assert str(index) == "2,1"
    assert index.to_word() == Word("011")
    assert index.reversed() == CompositionIndex((1, 2))
    with pytest.raises(ValueError):
        CompositionIndex.parse("2,0")


def test_compositions_count():
    """There are 2^(w-1) compositions of weight w."""
    for weight in range(1, 8):
        assert len(list(compositions(weight))) == 2 ** (weight - 1)
    assert sorted(c.parts for c in compositions(4, max_depth=2)) == [
        (1, 3), (2, 2), (3, 1), (4,),
    ]


def test_shuffle_small():
    assert shuffle("01", "1") == {Word("011"): 2, Word("101"): 1}
    assert shuffle("", "01") == {Word("01"): 1}


@settings(max_examples=100, deadline=None)
@given(a=words, b=words)
def test_shuffle_multiplicities(a, b):
    """Multiplicities add up to the number of interleavings."""
    product = shuffle(a, b)
    assert sum(product.values()) == comb(len(a) + len(b), len(a))
    assert all(len(w) == len(a) + len(b) for w in product)
    assert shuffle(b, a) == product


def test_stuffle_small():
    one = CompositionIndex((1,))
    assert stuffle(one, one) == {CompositionIndex((1, 1)): 2, CompositionIndex((2,)): 1}


def _stuffle_by_enumeration(first, second, m=9):
    """Values of sum over merged chains, compared through har-like sums at a fixed m."""
    from fractions import Fraction

    def chain_sum(parts):
        inner_first = parts[::-1]
        total = Fraction(0)
        for chain in combinations(range(1, m), len(inner_first)):
            term = Fraction(1)
            for u, n in zip(chain, inner_first):
                term /= u ** n
            total += term
        return total

    lhs = chain_sum(first.parts) * chain_sum(second.parts)
    rhs = sum(c * chain_sum(k.parts) for k, c in stuffle(first, second).items())
    return lhs, rhs


@settings(max_examples=40, deadline=None)
@given(
    a=st.lists(st.integers(min_value=1, max_value=3), min_size=1, max_size=2),
    b=st.lists(st.integers(min_value=1, max_value=3), min_size=1, max_size=2),
)
def test_stuffle_against_enumeration(a, b):
    lhs, rhs = _stuffle_by_enumeration(CompositionIndex(tuple(a)), CompositionIndex(tuple(b)))
    assert lhs == rhs


def test_antipode_and_s_y():
    assert antipode("011") == (-1, Word("110"))
    assert antipode("01") == (1, Word("10"))
    assert s_y(CompositionIndex((2, 1))) == (-1, CompositionIndex((1, 2)))
    assert s_y(CompositionIndex((3, 1))) == (1, CompositionIndex((1, 3)))
