"""Exact big-integer evaluation of the bit-pattern counting formulas.

All formulas are parametrised by the word length ``d`` and the overlap ``e``
of a window of width ``w = d + e`` with the following word.  The coupling
``d = 2**e`` is left to the experiment presets.  Binomials with out-of-range
arguments are zero, so displayed sums are evaluated as written.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict

from ._intmath import binom

__all__ = [
    "BlockParams",
    "FormulaValue",
    "MatchHistogram",
    "APPENDIX_BRANCHES",
    "main_pair_count",
    "main_pair_count_by_length",
    "dominant_term",
    "predicted_match_histogram",
    "histogram_pair_total",
    "carry_chain_pair_count",
    "all_ones_pair_count",
    "appendix_match_count",
    "appendix_pair_count",
    "formula_table",
]

# multiplicity -> number of patterns with exactly that many occurrences
MatchHistogram = Dict[int, int]

APPENDIX_BRANCHES = ("j_eq_d_one", "j_eq_d_zero", "j_gt_d_one", "j_gt_d_zero")


class DomainError(ValueError):
    pass


@dataclass(frozen=True)
class BlockParams:
    d: int
    e: int

    def __post_init__(self):
        if self.e < 1:
            raise DomainError(f"overlap e must be >= 1, got {self.e}")
        if self.d < self.e + 2:
            raise DomainError(f"need d >= e + 2, got d={self.d}, e={self.e}")

    @property
    def w(self) -> int:
        return self.d + self.e

    @property
    def middle(self) -> int:
        """Length ``d - e`` of the middle block."""
        return self.d - self.e


@dataclass(frozen=True)
class FormulaValue:
    name: str
    params: BlockParams
    form: str
    value: int
    j: int | None = None
    flags: tuple[str, ...] = field(default=())

    def as_dict(self) -> dict:
        row = {"name": self.name, "d": self.params.d, "e": self.params.e}
        if self.j is not None:
            row["j"] = self.j
        row["form"] = self.form
        row["value"] = str(self.value)
        if self.flags:
            row["flags"] = list(self.flags)
        return row


def _params(p) -> BlockParams:
    if isinstance(p, BlockParams):
        return p
    return BlockParams(*p)


def main_pair_count(p) -> FormulaValue:
    """Ordered pairs of positions whose w-bit windows agree, first e bits = last e bits.

    ``2^e * sum_{k=1}^{d-e-1} sum_{j=0}^{k-1} (k-j)^2 C(d-e-j-1, k-j)``
    """
    p = _params(p)
    m = p.middle
    total = 0
    for k in range(1, m):
        for j in range(k):
            total += (k - j) ** 2 * binom(m - j - 1, k - j)
    return FormulaValue("main_pair_count", p, "sum", total << p.e)


def main_pair_count_by_length(p) -> FormulaValue:
    """Same quantity with the summation reordered by ``M = d-e-j-1``.

    Uses ``sum_i i^2 C(M, i) = M (M+1) 2^(M-2)``.
    """
    p = _params(p)
    total = 0
    for M in range(1, p.middle):
        total += M * (M + 1) << M
    return FormulaValue("main_pair_count", p, "closed", (total >> 2) << p.e)


def dominant_term(p) -> FormulaValue:
    """The single summand ``2^e k^2 C(d-e-1, k)`` at ``j = 0``, ``k = floor((d-e-1)/2)``."""
    p = _params(p)
    k = (p.middle - 1) // 2
    return FormulaValue("dominant_term", p, "closed", (k * k * binom(p.middle - 1, k)) << p.e)


def predicted_match_histogram(p, k: int | None = None) -> MatchHistogram:
    """Multiplicity histogram of the window family with matching ends.

    ``k`` restricts to patterns with exactly ``k`` ones in the middle block.
    Multiplicity-0 entries are dropped.
    """
    p = _params(p)
    m = p.middle
    unit = 1 << (p.e - 1)
    hist: defaultdict[int, int] = defaultdict(int)
    ks = range(1, m) if k is None else [k]
    for kk in ks:
        if not 1 <= kk < m:
            continue
        # middle block starts with 0: k matches (a_1 = 0) or k+1 (a_1 = 1)
        c = unit * binom(m - 1, kk)
        hist[kk] += c
        hist[kk + 1] += c
        # middle block starts with j ones then a zero
        for j in range(1, kk + 1):
            c = unit * binom(m - j - 1, kk - j)
            hist[kk - j] += c
            hist[kk - j + 1] += c
    hist.pop(0, None)
    return {mult: c for mult, c in sorted(hist.items()) if c}


def histogram_pair_total(hist: MatchHistogram) -> int:
    """Ordered pairs implied by a histogram: ``sum m (m-1) count(m)``."""
    return sum(m * (m - 1) * c for m, c in hist.items())


def _small_e_flags(p: BlockParams) -> tuple[str, ...]:
    return ("e<2: terms vanish by convention",) if p.e < 2 else ()


def carry_chain_pair_count(p, form: str = "sum") -> FormulaValue:
    """Ordered pairs from windows whose word ends in a run of ones (carry chain)."""
    p = _params(p)
    d, e = p.d, p.e
    if form == "sum":
        inner = 0
        for j0 in range(1, e + 1):
            for j1 in range(e + 1, d):
                inner += binom(j1 - e, 2) << (j0 + d - j1 - 2)
        tail = sum(1 << (j0 - 2) for j0 in range(2, e + 1))
        inner += (binom(d - e, 2) + binom(d - e + 1, 2)) * tail + binom(d - e, 2)
        value = 2 * inner
    elif form == "closed":
        exact = Fraction((1 << e) - 1, 1 << (e - 1)) * ((1 << d) - (1 << e)) - (d - e) * (1 << e)
        if exact.denominator != 1:
            raise ArithmeticError("carry-chain closed form is not integral")
        value = int(exact)
    else:
        raise ValueError(f"form must be 'sum' or 'closed', got {form!r}")
    return FormulaValue("carry_chain_pair_count", p, form, value, flags=_small_e_flags(p))


def all_ones_pair_count(p) -> FormulaValue:
    """``(d-e-2)(d-e-1)(d-e)/6`` pairs from the all-ones prefix family."""
    p = _params(p)
    m = p.middle
    if m < 3:
        raise DomainError("all-ones count needs d - e >= 3")
    value, rem = divmod((m - 2) * (m - 1) * m, 6)
    assert rem == 0
    return FormulaValue("all_ones_pair_count", p, "closed", value)


def _one_bracket(m: int) -> int:
    return sum(
        (2 * (k - l) + 1) * binom(m - l - 1, k - l)
        for k in range(2, m)
        for l in range(1, k + 1)
    )


def _zero_sum(m: int) -> int:
    return sum(l * binom(m - l - 2, k - l) for k in range(1, m) for l in range(1, k + 1))


def appendix_match_count(p, j: int, branch: str) -> FormulaValue:
    """Occurrence counts of the B-type pattern for a shared-prefix length ``j``.

    ``j_eq_d_*`` branches take ``j == d``; ``j_gt_d_*`` take ``d < j <= d+e-1``.
    The ``one``/``zero`` suffix selects ``a_{e+1}``.
    """
    p = _params(p)
    d, m = p.d, p.middle
    if branch not in APPENDIX_BRANCHES:
        raise ValueError(f"unknown branch {branch!r}")
    if branch.startswith("j_eq_d"):
        if j != d:
            raise ValueError(f"branch {branch} needs j == d")
    elif not d < j <= d + p.e - 1:
        raise ValueError(f"branch {branch} needs d < j <= d + e - 1")

    if branch == "j_eq_d_one":
        value = sum(
            (k - l) * binom(m - l - 1, k - l) for k in range(2, m) for l in range(1, k)
        )
    elif branch == "j_eq_d_zero":
        value = _zero_sum(m)
    elif branch == "j_gt_d_one":
        # prefactor 2^(j-d-1) is >= 1 on this branch
        value = _one_bracket(m) << (j - d - 1)
    else:
        value = _zero_sum(m) << (j - d)
    return FormulaValue(f"appendix_match_count[{branch}]", p, "sum", value, j=j, flags=_small_e_flags(p))


def _appendix_pair_bracket(m: int) -> int:
    # (l-1)(k-l) + (l-1)(k-l+1) weights
    return sum(
        (l - 1) * (2 * (k - l) + 1) * binom(m - l - 1, k - l)
        for k in range(2, m)
        for l in range(1, k + 1)
    )


def appendix_pair_count(p, mode: str) -> tuple[FormulaValue, FormulaValue]:
    """``(sum_form, closed_form)`` lower bounds on B/C close pairs.

    ``mode="j_eq_d"``: ``2 sum (l-1)(k-l) C(d-e-l-1, k-l)`` against
    ``2^(d-e-1) (d-e-5)``.  ``mode="j_gt_d"``: the j-summed display over
    ``d+1 <= j <= d+e-1`` against the corresponding closed expression.
    """
    p = _params(p)
    d, e, m = p.d, p.e, p.middle
    if mode == "j_eq_d":
        s = 2 * sum(
            (l - 1) * (k - l) * binom(m - l - 1, k - l)
            for k in range(2, m)
            for l in range(1, k)
        )
        closed = (1 << (m - 1)) * (m - 5)
        flags = () if m >= 6 else ("d-e<6: closed form not a valid bound",)
    elif mode == "j_gt_d":
        s = sum(_appendix_pair_bracket(m) << (j - d) for j in range(d + 1, d + e))
        exact = Fraction((1 << e) - 2, 1 << (1 + e)) * (
            (1 << (2 + e))
            + (1 << d) * d
            + (1 << (1 + e)) * d
            - (1 << d) * e
            - (1 << (1 + e)) * e
            - (1 << (2 + d))
        )
        if exact.denominator != 1:
            raise ArithmeticError("j>d closed form is not integral")
        closed = int(exact)
        flags = _small_e_flags(p)
    else:
        raise ValueError(f"mode must be 'j_eq_d' or 'j_gt_d', got {mode!r}")
    name = f"appendix_pair_count[{mode}]"
    return (
        FormulaValue(name, p, "sum", s, flags=flags),
        FormulaValue(name, p, "closed", closed, flags=flags),
    )


def formula_table(p) -> list[FormulaValue]:
    """Every formula that is defined at ``(d, e)``, in a fixed order."""
    p = _params(p)
    rows = [main_pair_count(p), main_pair_count_by_length(p), dominant_term(p)]
    rows.append(
        FormulaValue(
            "histogram_pair_total",
            p,
            "sum",
            histogram_pair_total(predicted_match_histogram(p)),
        )
    )
    rows += [carry_chain_pair_count(p, "sum"), carry_chain_pair_count(p, "closed")]
    if p.middle >= 3:
        rows.append(all_ones_pair_count(p))
    rows.append(appendix_match_count(p, p.d, "j_eq_d_one"))
    rows.append(appendix_match_count(p, p.d, "j_eq_d_zero"))
    for j in range(p.d + 1, p.d + p.e):
        rows.append(appendix_match_count(p, j, "j_gt_d_one"))
        rows.append(appendix_match_count(p, j, "j_gt_d_zero"))
    rows += appendix_pair_count(p, "j_eq_d")
    rows += appendix_pair_count(p, "j_gt_d")
    return rows
