"""Exact integer/rational helpers with directed rounding.

Every logarithm here is returned as a dyadic rational (a ``Fraction`` whose
denominator is a power of two) that is a proven lower or upper bound. No
floating point is involved.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

DEFAULT_PREC = 64
_GUARD = 32


def to_fraction(x) -> Fraction:
    """Exact rational for a user parameter; floats go through their shortest decimal repr."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError(f"non-finite parameter {x}")
        return Fraction(repr(x))
    return Fraction(str(x))


def iroot(x: int, k: int) -> int:
    """floor(x ** (1/k)) for integers x >= 0, k >= 1."""
    if x < 0 or k < 1:
        raise ValueError("iroot needs x >= 0 and k >= 1")
    if x < 2 or k == 1:
        return x
    r = 1 << -(-x.bit_length() // k)
    while True:
        s = ((k - 1) * r + x // r ** (k - 1)) // k
        if s >= r:
            break
        r = s
    while r ** k > x:
        r -= 1
    while (r + 1) ** k <= x:
        r += 1
    return r


def floor_power(base: int, exponent) -> int:
    """floor(base ** exponent) for a nonnegative rational exponent, computed exactly."""
    e = to_fraction(exponent)
    if base < 0 or e < 0:
        raise ValueError("floor_power needs base >= 0 and exponent >= 0")
    if e == 0:
        return 1
    return iroot(base ** e.numerator, e.denominator)


def ceil_power(base: int, exponent) -> int:
    """ceil(base ** exponent) for a nonnegative rational exponent, computed exactly."""
    e = to_fraction(exponent)
    f = floor_power(base, e)
    if f ** e.denominator == base ** e.numerator:
        return f
    return f + 1


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _log2_int_bits(n: int, prec: int, upward: bool) -> Fraction:
    if n < 1:
        raise ValueError(f"log2 of non-positive integer {n}")
    e = n.bit_length() - 1
    if n == 1 << e:
        return Fraction(e)
    f = prec + _GUARD
    one = 1 << f
    two = one << 1
    if e <= f:
        y = n << (f - e)
    elif upward:
        y = ceil_div(n, 1 << (e - f))
    else:
        y = n >> (e - f)
    if upward and y >= two:
        return Fraction(e + 1)
    bits = 0
    for _ in range(prec):
        y = ceil_div(y * y, one) if upward else (y * y) >> f
        bits <<= 1
        if y >= two:
            bits |= 1
            y = (y + 1) >> 1 if upward else y >> 1
    if upward:
        bits += 1
    return e + Fraction(bits, 1 << prec)


def log2_lower(x, prec: int = DEFAULT_PREC) -> Fraction:
    """Dyadic rational L with L <= log2(x), within about 2^-prec of it."""
    q = to_fraction(x)
    if q <= 0:
        raise ValueError(f"log2 of non-positive value {q}")
    return _log2_int_bits(q.numerator, prec, False) - _log2_int_bits(q.denominator, prec, True)


def log2_upper(x, prec: int = DEFAULT_PREC) -> Fraction:
    """Dyadic rational U with U >= log2(x), within about 2^-prec of it."""
    q = to_fraction(x)
    if q <= 0:
        raise ValueError(f"log2 of non-positive value {q}")
    return _log2_int_bits(q.numerator, prec, True) - _log2_int_bits(q.denominator, prec, False)


def ceil_pow2_sqrt(n: int) -> int:
    """ceil(2 ** sqrt(n)) exactly.

    For perfect squares the power is an integer. Otherwise it is irrational, and
    the ceiling is the least K with log2(K)^2 >= n, decided with certified
    log2 bounds.
    """
    if n < 0:
        raise ValueError("negative argument")
    r = math.isqrt(n)
    if r * r == n:
        return 1 << r
    # 2^r < 2^sqrt(n) < 2^(r+1): binary search K in (2^r, 2^(r+1)]
    lo, hi = 1 << r, 1 << (r + 1)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _pow2_sqrt_at_most(n, mid):
            hi = mid
        else:
            lo = mid
    return hi


def _pow2_sqrt_at_most(n: int, k: int) -> bool:
    """True iff 2^sqrt(n) <= k, for non-square n (never an equality)."""
    prec = 32
    while True:
        lo = log2_lower(k, prec)
        hi = log2_upper(k, prec)
        if lo >= 0 and lo * lo > n:
            return True
        if hi * hi < n:
            return False
        prec *= 2
