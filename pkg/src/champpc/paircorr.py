"""Exact close-pair counts on the circle for w-bit samples.

A pair ``(l, m)`` is close when ``||x_l - x_m|| <= s / N**beta``.  With only
``w`` bits of each point known, the true circular distance lies within one
unit of ``delta = min(|X_l - X_m|, 2**w - |X_l - X_m|)``, so two counts are
reported:

* ``count_lower`` -- pairs with ``(delta + 1) * q * T <= p * 2**w``
  (certainly close),
* ``count_upper`` -- pairs with ``(delta - 1) * q * T <= p * 2**w``
  (possibly close),

where ``s = p/q`` and ``T`` encloses ``N**beta`` from the safe side.  All
comparisons are integer; nothing passes through floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from ._intmath import format_fraction, parse_fraction, root_enclosure
from .shifts import FAST_WIDTH, SequenceSample

__all__ = [
    "Threshold",
    "PairCountResult",
    "WidthError",
    "make_threshold",
    "distance_bounds",
    "count_within",
    "count_close_pairs",
    "ppc_statistic",
    "weak_ppc_statistic",
    "ppc_curve",
]


class WidthError(ValueError):
    """The sample's bit width cannot resolve the requested threshold."""


@dataclass(frozen=True)
class Threshold:
    s: Fraction
    beta: Fraction
    N: int

    def __post_init__(self):
        if self.s < 0:
            raise ValueError("s must be >= 0")
        if not 0 < self.beta <= 1:
            raise ValueError(f"beta must lie in (0, 1], got {self.beta}")
        if self.N < 1:
            raise ValueError("N must be >= 1")

    def enclosure(self) -> tuple[int, int]:
        """Integers ``T_lo <= N**beta <= T_hi``."""
        if self.beta == 1:
            return self.N, self.N
        return root_enclosure(self.N, self.beta.numerator, self.beta.denominator)


def make_threshold(s, N: int, beta=1) -> Threshold:
    return Threshold(parse_fraction(s), parse_fraction(beta), N)


@dataclass(frozen=True)
class PairCountResult:
    N: int
    s: Fraction
    beta: Fraction
    count_lower: int
    count_upper: int
    normalized_lower: Fraction
    normalized_upper: Fraction

    def as_row(self) -> dict:
        return {
            "s_num": self.s.numerator,
            "s_den": self.s.denominator,
            "beta_num": self.beta.numerator,
            "beta_den": self.beta.denominator,
            "N": self.N,
            "count_lower": self.count_lower,
            "count_upper": self.count_upper,
            "norm_lower": format_fraction(self.normalized_lower),
            "norm_upper": format_fraction(self.normalized_upper),
        }


def distance_bounds(width: int, t: Threshold) -> tuple[int, int]:
    """Largest integer distances ``(D_lo, D_hi)`` that are certainly / possibly close.

    ``(delta + 1) q T <= p 2^w`` is ``delta <= floor(p 2^w / (q T)) - 1`` and
    ``(delta - 1) q T <= p 2^w`` is ``delta <= floor(p 2^w / (q T)) + 1``.
    The lower side uses the larger root bound ``T_hi``, the upper side ``T_lo``.
    """
    p, q = t.s.numerator, t.s.denominator
    t_lo, t_hi = t.enclosure()
    scaled = p << width
    return scaled // (q * t_hi) - 1, scaled // (q * t_lo) + 1


def _check_width(width: int, t: Threshold) -> None:
    _, t_hi = t.enclosure()
    if (1 << width) <= 4 * t.s.denominator * t_hi:
        raise WidthError(
            f"width {width} too small for s={t.s}, N={t.N}, beta={t.beta}; "
            f"need 2**w > {4 * t.s.denominator * t_hi}"
        )


def _count_sorted_python(v: Sequence[int], modulus: int, D: int) -> int:
    # circular two-pointer over a sorted list; returns unordered pairs
    n = len(v)
    total = 0
    hi = 0
    for i in range(n):
        hi = max(hi, i + 1)
        while hi < n and v[hi] - v[i] <= D:
            hi += 1
        total += hi - i - 1
    # wrap-around pairs i < j with v[j] - v[i] >= modulus - D; D < modulus/2 keeps
    # these disjoint from the direct ones
    far = modulus - D
    j = 0
    for i in range(n):
        while j < n and v[j] < v[i] + far:
            j += 1
        total += n - j
    return total


def count_within(values, width: int, D: int, method: str = "auto") -> int:
    """Ordered pairs ``l != m`` whose circular distance is at most ``D``.

    ``method`` is ``"numpy"`` (sorted int64 array plus binary search),
    ``"two_pointer"`` (pure Python, any width) or ``"auto"``.
    """
    if method not in ("auto", "numpy", "two_pointer"):
        raise ValueError(f"unknown method {method!r}")
    n = len(values)
    if D < 0 or n < 2:
        return 0
    modulus = 1 << width
    if 2 * D >= modulus:
        return n * (n - 1)
    if method == "numpy" and width > FAST_WIDTH:
        raise ValueError(f"numpy method needs width <= {FAST_WIDTH}")
    if method != "two_pointer" and width <= FAST_WIDTH:
        v = np.sort(np.asarray(values, dtype=np.int64))
        idx = np.arange(n)
        near = np.searchsorted(v, v + D, side="right") - idx - 1
        far = n - np.searchsorted(v, v + (modulus - D), side="left")
        return 2 * int(near.sum() + far.sum())
    return 2 * _count_sorted_python(sorted(values), modulus, D)


def count_close_pairs(sample: SequenceSample, t: Threshold, method: str = "auto") -> PairCountResult:
    """Lower and upper ordered close-pair counts in O(N log N)."""
    _check_width(sample.width, t)
    d_lo, d_hi = distance_bounds(sample.width, t)
    lower = count_within(sample.values, sample.width, d_lo, method)
    upper = count_within(sample.values, sample.width, d_hi, method)
    t_lo, t_hi = t.enclosure()
    N2 = t.N * t.N
    return PairCountResult(
        N=t.N,
        s=t.s,
        beta=t.beta,
        count_lower=lower,
        count_upper=upper,
        normalized_lower=Fraction(lower * t_lo, N2),
        normalized_upper=Fraction(upper * t_hi, N2),
    )


def ppc_statistic(sample: SequenceSample, s=1) -> PairCountResult:
    """``(1/N) #{l != m : ||x_l - x_m|| <= s/N}`` as a lower/upper pair."""
    return count_close_pairs(sample, make_threshold(s, sample.N))


def weak_ppc_statistic(sample: SequenceSample, s=1, beta="1/2") -> PairCountResult:
    """Pairs within ``s / N**beta``, normalised by ``N**(2 - beta)``."""
    t = make_threshold(s, sample.N, beta)
    if t.beta >= 1:
        raise ValueError("weak statistic needs 0 < beta < 1")
    return count_close_pairs(sample, t)


def ppc_curve(sample: SequenceSample, s_grid: Iterable) -> list[PairCountResult]:
    """One :func:`ppc_statistic` per grid point; the grid must be nonempty and ascending."""
    grid = [parse_fraction(s) for s in s_grid]
    if not grid:
        raise ValueError("empty s grid")
    if any(b < a for a, b in zip(grid, grid[1:])):
        raise ValueError("s grid must be ascending")
    return [ppc_statistic(sample, s) for s in grid]
