#!/usr/bin/env python3
"""
Words over {e0, e1} and composition indices.

A word is stored as a string over "0" and "1", read left to right. A
composition (n_d, ..., n_1) is written outermost first and corresponds to
the word e0^{n_d-1} e1 ... e0^{n_1-1} e1.
"""

from dataclasses import dataclass
from typing import Iterator, Tuple

from harmfrob.errors import WordShapeError


@dataclass(frozen=True)
class Word:
    """A word over the alphabet {e0, e1}."""
    letters: str = ""

    def __post_init__(self):
        if any(ch not in "01" for ch in self.letters):
            raise ValueError(f"word letters must be '0' or '1': {self.letters!r}")

    @classmethod
    def e0(cls, power: int = 1) -> "Word":
        return cls("0" * power)

    @classmethod
    def e1(cls) -> "Word":
        return cls("1")

    @property
    def weight(self) -> int:
        return len(self.letters)

    @property
    def depth(self) -> int:
        return self.letters.count("1")

    def is_empty(self) -> bool:
        return not self.letters

    def ends_in_e1(self) -> bool:
        return self.letters.endswith("1")

    def leading_e0(self) -> int:
        """Length of the leading block of e0's."""
        return len(self.letters) - len(self.letters.lstrip("0"))

    def strip_leading_e0(self) -> "Word":
        return Word(self.letters.lstrip("0"))

    def reversed(self) -> "Word":
        return Word(self.letters[::-1])

    def to_composition(self) -> "CompositionIndex":
        """Composition of an e1-ending (or empty) word."""
        if self.letters and not self.ends_in_e1():
            raise WordShapeError(f"word {self.letters!r} ends in e0")
        parts = tuple(len(block) + 1 for block in self.letters.split("1")[:-1])
        return CompositionIndex(parts)

    def sort_key(self) -> Tuple[int, int, str]:
        """Canonical order: weight, then depth, then lexicographic."""
        return (self.weight, self.depth, self.letters)

    def __add__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[str]:
        return iter(self.letters)

    def __str__(self) -> str:
        return self.letters or "∅"


EMPTY_WORD = Word("")


@dataclass(frozen=True)
class CompositionIndex:
    """
    A composition (n_d, ..., n_1) of positive integers, outermost first.

    The rightmost part n_1 belongs to the innermost summation variable m_1.
    """
    parts: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(int(n) for n in self.parts))
        if any(n < 1 for n in self.parts):
            raise ValueError(f"composition parts must be positive: {self.parts}")

    @classmethod
    def parse(cls, text: str) -> "CompositionIndex":
        """Parse the canonical string 'n_d,...,n_1' (empty string is the empty index)."""
        text = text.strip()
        if not text or text == "∅":
            return cls(())
        try:
            parts = tuple(int(piece) for piece in text.split(","))
        except ValueError:
            raise ValueError(f"malformed composition index: {text!r}")
        return cls(parts)

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def depth(self) -> int:
        return len(self.parts)

    def is_empty(self) -> bool:
        return not self.parts

    def to_word(self) -> Word:
        return Word("".join("0" * (n - 1) + "1" for n in self.parts))

    def prepend(self, n: int) -> "CompositionIndex":
        """Add a new outermost part."""
        return CompositionIndex((n,) + self.parts)

    def outer(self) -> int:
        return self.parts[0]

    def inner_rest(self) -> "CompositionIndex":
        """Drop the outermost part."""
        return CompositionIndex(self.parts[1:])

    def reversed(self) -> "CompositionIndex":
        return CompositionIndex(self.parts[::-1])

    def sort_key(self) -> Tuple[int, int, Tuple[int, ...]]:
        return (self.weight, self.depth, self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __str__(self) -> str:
        return ",".join(str(n) for n in self.parts)


EMPTY_INDEX = CompositionIndex(())


def compositions(weight: int, max_depth: int = None) -> Iterator[CompositionIndex]:
    """All compositions of a given weight, optionally bounded in depth."""
    if weight == 0:
        yield EMPTY_INDEX
        return
    for first in range(1, weight + 1):
        for rest in compositions(weight - first, None if max_depth is None else max_depth - 1):
            if max_depth is not None and rest.depth + 1 > max_depth:
                continue
            yield rest.prepend(first)
