"""Sequences of w-bit numerators on the unit circle.

Every point ``x`` is stored as the integer ``X = floor(2**w * x)``.  The
Champernowne kind gives ``x_n = {2**n * alpha}``; the reference kinds
(uniform, Kronecker, sqrt(n)) exist to sanity-check the pair statistic.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

import numpy as np

from .champernowne import bit_string

__all__ = [
    "ShiftPoint",
    "SequenceSample",
    "KINDS",
    "FAST_WIDTH",
    "shift_point",
    "champernowne_sequence",
    "golden_numerator",
    "reference_sequence",
    "default_width",
]

KINDS = ("champernowne", "uniform", "kronecker", "sqrt_n")

# widths up to this many bits are handled with int64 arrays
FAST_WIDTH = 62


@dataclass(frozen=True)
class ShiftPoint:
    n: int
    numerator: int
    width: int


@dataclass(frozen=True)
class SequenceSample:
    kind: str
    N: int
    width: int
    values: list[int] = field(repr=False)
    seed: int | None = None
    parameter: int | None = None
    variant: str | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown sequence kind {self.kind!r}")
        if len(self.values) != self.N:
            raise ValueError("values length does not match N")

    def as_array(self) -> np.ndarray:
        """Values as an int64 array; only valid for widths up to FAST_WIDTH."""
        if self.width > FAST_WIDTH:
            raise ValueError(f"width {self.width} exceeds int64 fast path")
        return np.asarray(self.values, dtype=np.int64)


def default_width(N: int) -> int:
    """Working width for an N-point sample: comfortably above log2(N) + 8."""
    return max(32, N.bit_length() + 24)


def shift_point(n: int, w: int) -> ShiftPoint:
    """``{2**n * alpha}`` truncated to ``w`` bits (digits ``n+1 .. n+w``)."""
    if n < 0:
        raise ValueError("shift index must be >= 0")
    if w < 1:
        raise ValueError("width must be >= 1")
    return ShiftPoint(n, int(bit_string(n + 1, w), 2), w)


def _sliding_windows(bits: str, count: int, w: int) -> list[int]:
    if w <= FAST_WIDTH:
        arr = np.frombuffer(bits.encode("ascii"), dtype=np.uint8) - ord("0")
        arr = arr.astype(np.int64)
        out = np.zeros(count, dtype=np.int64)
        for t in range(w):
            out = (out << 1) | arr[t : t + count]
        return out.tolist()
    mask = (1 << w) - 1
    value = int(bits[: w - 1], 2) if w > 1 else 0
    out = []
    for t in range(count):
        value = ((value << 1) | (bits[t + w - 1] == "1")) & mask
        out.append(value)
    return out


def champernowne_sequence(N: int, w: int) -> SequenceSample:
    """Numerators of ``x_1 .. x_N`` from one pass over digits ``2 .. N+w``."""
    if N < 1:
        raise ValueError("N must be >= 1")
    if w < 1:
        raise ValueError("width must be >= 1")
    bits = bit_string(2, N + w - 1)
    return SequenceSample("champernowne", N, w, _sliding_windows(bits, N, w))


def golden_numerator(w: int) -> int:
    """``floor(2**w * (sqrt(5) - 1) / 2)``."""
    return (math.isqrt(5 << (2 * w)) - (1 << w)) // 2


def _non_squares(count: int) -> list[int]:
    out = []
    n = 1
    while len(out) < count:
        n += 1
        r = math.isqrt(n)
        if r * r != n:
            out.append(n)
    return out


def reference_sequence(
    kind: str,
    N: int,
    w: int,
    seed: int | None = None,
    parameter: int | str | None = None,
    skip_squares: bool = False,
) -> SequenceSample:
    """Build a reference sample.

    ``uniform`` needs ``seed``; ``kronecker`` needs ``parameter`` (a w-bit
    numerator or the name ``"golden"``); ``sqrt_n`` takes nothing.  The
    ``champernowne`` kind is accepted too and ignores both.

    With ``skip_squares`` the ``sqrt_n`` kind runs over the first ``N``
    non-square integers instead of ``1..N``.  Perfect squares all land on 0
    and add about one to the normalised pair count, so only the non-square
    sequence is expected to look Poissonian.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    if w < 1:
        raise ValueError("width must be >= 1")
    modulus = 1 << w
    if kind == "champernowne":
        return champernowne_sequence(N, w)
    if kind == "uniform":
        if seed is None:
            raise ValueError("uniform sequence needs a seed")
        rng = random.Random(seed)
        values = [rng.getrandbits(w) for _ in range(N)]
        return SequenceSample(kind, N, w, values, seed=seed)
    if kind == "kronecker":
        if parameter is None:
            raise ValueError("kronecker sequence needs a parameter")
        A = golden_numerator(w) if parameter == "golden" else int(parameter)
        if not 0 <= A < modulus:
            raise ValueError("kronecker parameter must be a w-bit numerator")
        values = [n * A % modulus for n in range(1, N + 1)]
        return SequenceSample(kind, N, w, values, parameter=A)
    if kind == "sqrt_n":
        if skip_squares:
            ns = _non_squares(N)
        else:
            ns = range(1, N + 1)
        values = [math.isqrt(n << (2 * w)) % modulus for n in ns]
        return SequenceSample(kind, N, w, values, variant="nonsquare" if skip_squares else None)
    raise ValueError(f"unknown sequence kind {kind!r}")
