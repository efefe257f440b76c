"""Pair-correlation laboratory for the shifts of the base-2 Champernowne constant."""

from .champernowne import block_start, digit_at, locate, window, word_value
from .paircorr import (
    PairCountResult,
    Threshold,
    count_close_pairs,
    make_threshold,
    ppc_curve,
    ppc_statistic,
    weak_ppc_statistic,
)
from .patterncount import BlockParams, main_pair_count
from .shifts import champernowne_sequence, reference_sequence, shift_point

__version__ = "0.1.0"

__all__ = [
    "block_start",
    "digit_at",
    "locate",
    "window",
    "word_value",
    "PairCountResult",
    "Threshold",
    "count_close_pairs",
    "make_threshold",
    "ppc_curve",
    "ppc_statistic",
    "weak_ppc_statistic",
    "BlockParams",
    "main_pair_count",
    "champernowne_sequence",
    "reference_sequence",
    "shift_point",
]
