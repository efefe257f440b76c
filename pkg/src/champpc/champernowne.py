"""Digit stream of the Champernowne constant in base ``b``.

The constant is the concatenation ``0.(1)(2)(3)...`` of all positive integers
written in base ``b``.  Words of a fixed length ``d`` form a contiguous block;
stream positions are 1-based, word ordinals and digit offsets 0-based.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

__all__ = [
    "BlockLocation",
    "BitWindow",
    "block_start",
    "block_length",
    "locate",
    "word_value",
    "word_digits",
    "digit_at",
    "iter_digits",
    "digits",
    "bit_string",
    "window",
]


@dataclass(frozen=True)
class BlockLocation:
    word_length: int
    word_ordinal: int
    bit_offset: int
    base: int = 2


@dataclass(frozen=True)
class BitWindow:
    """``width`` consecutive digits read as one integer, earliest digit most significant."""

    width: int
    value: int
    base: int = 2

    def __post_init__(self):
        if self.width < 1:
            raise ValueError("window width must be >= 1")
        if not 0 <= self.value < self.base**self.width:
            raise ValueError("window value out of range for its width")

    def bits(self) -> str:
        return "".join(map(str, _to_digits(self.value, self.base, self.width)))


def _check_base(base: int) -> None:
    if base < 2:
        raise ValueError(f"base must be >= 2, got {base}")


def block_length(d: int, base: int = 2) -> int:
    """Number of digits in the block of words of length ``d``."""
    _check_base(base)
    if d < 1:
        raise ValueError("word length must be >= 1")
    return d * (base - 1) * base ** (d - 1)


def block_start(d: int, base: int = 2) -> int:
    """1-based stream position of the first digit of the block of ``d``-digit words."""
    _check_base(base)
    if d < 1:
        raise ValueError("word length must be >= 1")
    m = d - 1
    # sum_{k=1}^{m} k (b-1) b^{k-1} = m b^m - (b^m - 1)/(b - 1)
    bm = base**m
    return 1 + m * bm - (bm - 1) // (base - 1)


@lru_cache(maxsize=None)
def _starts(base: int, upto: int) -> tuple[int, ...]:
    return tuple(block_start(d, base) for d in range(1, upto + 1))


def _word_length_at(i: int, base: int) -> int:
    upto = 32
    while True:
        starts = _starts(base, upto)
        if i < starts[-1]:
            return bisect.bisect_right(starts, i)
        upto *= 2


def locate(i: int, base: int = 2) -> BlockLocation:
    """Map a stream position to (word length, word ordinal, digit offset)."""
    _check_base(base)
    if i < 1:
        raise ValueError(f"stream positions start at 1, got {i}")
    d = _word_length_at(i, base)
    n, r = divmod(i - block_start(d, base), d)
    return BlockLocation(d, n, r, base)


def word_value(d: int, n: int, base: int = 2) -> int:
    """The ``n``-th word (0-based) of length ``d``: ``base**(d-1) + n``."""
    _check_base(base)
    if d < 1:
        raise ValueError("word length must be >= 1")
    if not 0 <= n < (base - 1) * base ** (d - 1):
        raise ValueError(f"word ordinal {n} out of range for length {d}")
    return base ** (d - 1) + n


def _to_digits(value: int, base: int, width: int) -> list[int]:
    out = [0] * width
    for t in range(width - 1, -1, -1):
        value, out[t] = divmod(value, base)
    return out


def word_digits(value: int, base: int = 2) -> list[int]:
    """Digits of a positive integer, most significant first."""
    if base == 2:
        return [int(c) for c in format(value, "b")]
    out = []
    while value:
        value, r = divmod(value, base)
        out.append(r)
    return out[::-1]


def digit_at(i: int, base: int = 2) -> int:
    """Digit at 1-based stream position ``i``."""
    loc = locate(i, base)
    value = word_value(loc.word_length, loc.word_ordinal, base)
    return value // base ** (loc.word_length - 1 - loc.bit_offset) % base


def _iter_words(i: int, base: int) -> tuple[int, Iterator[int]]:
    loc = locate(i, base)

    def words():
        value = word_value(loc.word_length, loc.word_ordinal, base)
        while True:
            yield value
            value += 1

    return loc.bit_offset, words()


def iter_digits(start: int, base: int = 2) -> Iterator[int]:
    """Endless digit stream from position ``start`` on."""
    skip, words = _iter_words(start, base)
    for value in words:
        ds = word_digits(value, base)
        yield from ds[skip:]
        skip = 0


def bit_string(start: int, length: int) -> str:
    """Base-2 digits ``start .. start+length-1`` as a ``'0'/'1'`` string."""
    if length < 0:
        raise ValueError("length must be >= 0")
    if length == 0:
        return ""
    skip, words = _iter_words(start, 2)
    pieces = []
    total = -skip
    for value in words:
        s = format(value, "b")
        pieces.append(s)
        total += len(s)
        if total >= length:
            break
    return "".join(pieces)[skip : skip + length]


def digits(start: int, length: int, base: int = 2) -> list[int]:
    """Digits ``start .. start+length-1`` of the base-``base`` stream."""
    if base == 2:
        return [int(c) for c in bit_string(start, length)]
    it = iter_digits(start, base)
    return [next(it) for _ in range(length)]


def window(i: int, w: int, base: int = 2) -> BitWindow:
    """The ``w`` digits starting at position ``i`` packed into one integer."""
    if w < 1:
        raise ValueError("window width must be >= 1")
    if i < 1:
        raise ValueError(f"stream positions start at 1, got {i}")
    if base == 2:
        return BitWindow(w, int(bit_string(i, w), 2), 2)
    value = 0
    for dgt in digits(i, w, base):
        value = value * base + dgt
    return BitWindow(w, value, base)
