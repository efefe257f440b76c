from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from champpc._intmath import binom, format_fraction, iroot, parse_fraction, root_enclosure


def test_binom_out_of_range_is_zero():
    assert binom(3, 4) == 0
    assert binom(3, -1) == 0
    assert binom(-2, 1) == 0
    assert binom(5, 2) == 10


@given(st.integers(0, 10**40), st.integers(1, 7))
def test_iroot_is_floor_root(n, k):
    r = iroot(n, k)
    assert r**k <= n < (r + 1) ** k


@given(st.integers(1, 10**9), st.sampled_from([(1, 2), (1, 4), (3, 4), (2, 3)]))
def test_root_enclosure(n, beta):
    lo, hi = root_enclosure(n, *beta)
    u, v = beta
    assert lo**v <= n**u <= hi**v
    assert hi - lo in (0, 1)


def test_parse_fraction_forms():
    assert parse_fraction("3/10") == Fraction(3, 10)
    assert parse_fraction("1.2") == Fraction(6, 5)
    assert parse_fraction(2) == 2


@pytest.mark.parametrize(
    "value, text",
    [
        (Fraction(5360, 2048), "2.6171875"),
        (Fraction(1, 3), "1/3"),
        (Fraction(7), "7"),
        (Fraction(-1, 4), "-0.25"),
        (Fraction(1, 100), "0.01"),
    ],
)
def test_format_fraction(value, text):
    assert format_fraction(value) == text
    assert parse_fraction(text) == value
