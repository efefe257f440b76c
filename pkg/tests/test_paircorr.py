import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from champpc.oracle import naive_close_pairs
from champpc.paircorr import (
    WidthError,
    count_close_pairs,
    count_within,
    make_threshold,
    ppc_curve,
    ppc_statistic,
    weak_ppc_statistic,
)
from champpc.shifts import SequenceSample, champernowne_sequence


def sample_of(values, w, kind="uniform"):
    return SequenceSample(kind, len(values), w, list(values))


def test_half_circle_boundary():
    w = 16
    res = ppc_statistic(sample_of([0, 2 ** (w - 1)], w), 1)
    assert (res.count_lower, res.count_upper) == (0, 2)


def test_thirds_all_close():
    w = 20
    vals = [0, 2**w // 3, 2 * 2**w // 3]
    res = ppc_statistic(sample_of(vals, w), "1.2")
    assert (res.count_lower, res.count_upper) == (6, 6)
    assert res.normalized_lower == 2


def test_champernowne_64_pinned():
    sample = champernowne_sequence(64, 32)
    res = ppc_statistic(sample, 1)
    assert (res.count_lower, res.count_upper) == (126, 126)
    assert (res.count_lower, res.count_upper) == naive_close_pairs(sample, make_threshold(1, 64))


def test_weak_champernowne_2048_pinned():
    res = weak_ppc_statistic(champernowne_sequence(2048, 64), 1, "1/2")
    assert (res.count_lower, res.count_upper) == (186194, 189464)
    assert res.normalized_lower <= res.normalized_upper


def test_zero_threshold():
    res = ppc_statistic(sample_of([5, 5, 6, 100], 12), 0)
    assert res.count_lower == 0
    # distances 0 and 1 stay in the ambiguity band
    assert res.count_upper == 6


@st.composite
def samples(draw, max_n=60):
    w = draw(st.sampled_from([12, 20, 40, 61, 62, 63, 70]))
    n = draw(st.integers(1, max_n))
    clustered = draw(st.booleans())
    if clustered:
        centre = draw(st.integers(0, 2**w - 1))
        spread = draw(st.integers(0, 2 ** min(w - 1, 10)))
        vals = [(centre + draw(st.integers(-spread, spread))) % 2**w for _ in range(n)]
    else:
        vals = draw(st.lists(st.integers(0, 2**w - 1), min_size=n, max_size=n))
    return sample_of(vals, w)


thresholds = st.tuples(
    st.fractions(min_value=0, max_value=5, max_denominator=7),
    st.sampled_from([Fraction(1), Fraction(1, 2), Fraction(1, 4), Fraction(3, 4), Fraction(2, 3)]),
)


@given(samples(), thresholds)
@settings(max_examples=200, deadline=None)
def test_matches_naive(sample, thr):
    s, beta = thr
    t = make_threshold(s, sample.N, beta)
    try:
        res = count_close_pairs(sample, t)
    except WidthError:
        return
    assert (res.count_lower, res.count_upper) == naive_close_pairs(sample, t)
    slow = count_close_pairs(sample, t, method="two_pointer")
    assert (slow.count_lower, slow.count_upper) == (res.count_lower, res.count_upper)
    assert res.count_lower <= res.count_upper <= sample.N * (sample.N - 1)
    assert res.count_lower % 2 == 0 and res.count_upper % 2 == 0


@given(samples(), st.integers(0, 2**70), st.fractions(0, 4, max_denominator=5))
@settings(max_examples=100, deadline=None)
def test_rotation_invariance(sample, shift, s):
    w = sample.width
    moved = sample_of([(v + shift) % 2**w for v in sample.values], w)
    try:
        a = ppc_statistic(sample, s)
    except WidthError:
        return
    b = ppc_statistic(moved, s)
    assert (a.count_lower, a.count_upper) == (b.count_lower, b.count_upper)


@given(samples(), st.lists(st.fractions(0, 6, max_denominator=9), min_size=2, max_size=6))
@settings(max_examples=80, deadline=None)
def test_monotone_in_s(sample, grid):
    grid = sorted(grid)
    try:
        curve = ppc_curve(sample, grid)
    except WidthError:
        return
    lows = [r.count_lower for r in curve]
    ups = [r.count_upper for r in curve]
    assert lows == sorted(lows) and ups == sorted(ups)


def test_sandwich_against_exact_points():
    # true points carry 12 more bits than the stored numerators
    rng = random.Random(3)
    w, extra = 16, 12
    for _ in range(30):
        n = rng.randint(2, 40)
        centre = rng.getrandbits(w + extra)
        raw = [(centre + rng.randint(-(2**20), 2**20)) % 2 ** (w + extra) for _ in range(n)]
        true = [Fraction(r, 2 ** (w + extra)) for r in raw]
        sample = sample_of([r >> extra for r in raw], w)
        for s in (Fraction(1, 3), Fraction(1), Fraction(5, 2)):
            for beta in (Fraction(1), Fraction(1, 2)):
                res = count_close_pairs(sample, make_threshold(s, n, beta))
                lo, hi = make_threshold(s, n, beta).enclosure()
                exact = 0
                for a in range(n):
                    for b in range(n):
                        if a == b:
                            continue
                        dist = abs(true[a] - true[b])
                        dist = min(dist, 1 - dist)
                        # dist <= s / N^beta, decided exactly when beta = 1
                        if beta == 1:
                            exact += dist <= s / n
                        else:
                            exact += (dist / s) ** 2 <= Fraction(1, n) if s else dist == 0
                assert res.count_lower <= exact <= res.count_upper


def test_constant_sample_curve():
    sample = sample_of([77] * 9, 24)
    for r in ppc_curve(sample, [0, Fraction(1, 2), 1, 3]):
        assert r.count_upper == 72
    for r in ppc_curve(sample, [Fraction(1, 2), 1, 3]):
        assert r.normalized_lower == 8


def test_curve_errors():
    sample = sample_of([1, 2, 3], 24)
    with pytest.raises(ValueError):
        ppc_curve(sample, [])
    with pytest.raises(ValueError):
        ppc_curve(sample, [2, 1])


def test_curve_matches_single_statistic():
    sample = champernowne_sequence(2**11, 40)
    (r,) = ppc_curve(sample, [1])
    assert r == ppc_statistic(sample, 1)


def test_width_guard():
    with pytest.raises(WidthError):
        ppc_statistic(sample_of([1, 2, 3], 3), 1)
    # 2^w must exceed 4 q N
    with pytest.raises(WidthError):
        ppc_statistic(sample_of([1] * 4, 6), Fraction(1, 4))
    ppc_statistic(sample_of([1] * 4, 7), Fraction(1, 4))


def test_beta_range():
    sample = sample_of([1, 2, 3], 30)
    with pytest.raises(ValueError):
        make_threshold(1, 3, 0)
    with pytest.raises(ValueError):
        make_threshold(1, 3, Fraction(3, 2))
    with pytest.raises(ValueError):
        weak_ppc_statistic(sample, 1, 1)


def test_count_within_python_path_matches_numpy():
    rng = random.Random(5)
    vals = [rng.getrandbits(20) for _ in range(3000)]
    for D in (0, 3, 1000, 2**19 - 1, 2**19):
        fast = count_within(vals, 20, D)
        slow = count_within([v << 50 for v in vals], 70, (D << 50) + (2**50 - 1))
        assert fast == slow


def test_method_validation():
    with pytest.raises(ValueError):
        count_within([1, 2], 70, 3, method="numpy")
    with pytest.raises(ValueError):
        count_within([1, 2], 20, 3, method="fast")


def test_sqrt_n_square_excess_is_exact():
    # 1..N includes floor(sqrt N) squares, all at 0; they alone lift F by about one
    import math

    from champpc.shifts import reference_sequence

    N, w = 10**5, 40
    literal = reference_sequence("sqrt_n", N, w)
    squares = math.isqrt(N)
    rest = [v for n, v in enumerate(literal.values, start=1) if math.isqrt(n) ** 2 != n]
    t = make_threshold(1, N)
    full = count_close_pairs(literal, t)
    part = count_close_pairs(SequenceSample("sqrt_n", len(rest), w, rest), t)
    zeros = squares * (squares - 1)
    assert full.count_upper - part.count_upper == zeros
    assert full.count_lower - part.count_lower == zeros
    assert full.normalized_upper > Fraction(29, 10)
    assert Fraction(19, 10) <= Fraction(full.count_lower - zeros, N) <= Fraction(21, 10)
