"""Small exact-integer helpers shared across the package."""

from __future__ import annotations

import math
from fractions import Fraction


def binom(n: int, k: int) -> int:
    """Binomial coefficient that is 0 whenever the arguments fall outside ``0 <= k <= n``."""
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def iroot(n: int, k: int) -> int:
    """Floor of the k-th root of a nonnegative integer."""
    if n < 0 or k < 1:
        raise ValueError("iroot needs n >= 0 and k >= 1")
    if k == 1 or n < 2:
        return n
    if k == 2:
        return math.isqrt(n)
    # Newton from above; start at a power of two guaranteed >= the root
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x**k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def root_enclosure(n: int, num: int, den: int) -> tuple[int, int]:
    """Integers ``(lo, hi)`` with ``lo <= n**(num/den) <= hi``, tight to one unit."""
    target = n**num
    lo = iroot(target, den)
    hi = lo if lo**den == target else lo + 1
    return lo, hi


def parse_fraction(text: str | int | Fraction) -> Fraction:
    """Accept ``"p/q"``, an integer, a decimal string or a Fraction."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    return Fraction(str(text).strip())


def format_fraction(value: Fraction | int) -> str:
    """Render an exact rational as a decimal string when it terminates, else as ``p/q``."""
    value = Fraction(value)
    num, den = value.numerator, value.denominator
    twos = fives = 0
    rest = den
    while rest % 2 == 0:
        rest //= 2
        twos += 1
    while rest % 5 == 0:
        rest //= 5
        fives += 1
    if rest != 1:
        return f"{num}/{den}"
    places = max(twos, fives)
    if places == 0:
        return str(num)
    scaled = num * 10**places // den
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled)).rjust(places + 1, "0")
    return f"{sign}{digits[:-places]}.{digits[-places:]}".rstrip("0").rstrip(".")
