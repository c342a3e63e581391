from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from implicit_graphs.exact import (
    ceil_pow2_sqrt,
    ceil_power,
    floor_power,
    iroot,
    log2_lower,
    log2_upper,
    to_fraction,
)

mpmath.mp.prec = 400


def mp_log2(q: Fraction):
    return mpmath.log(mpmath.mpf(q.numerator) / q.denominator, 2)


def test_to_fraction_uses_decimal_repr():
    assert to_fraction(0.6) == Fraction(3, 5)
    assert to_fraction(0.6) - to_fraction(0.5) == Fraction(1, 10)
    assert to_fraction("3/4") == Fraction(3, 4)
    with pytest.raises(ValueError):
        to_fraction(float("nan"))


@given(st.integers(0, 10**40), st.integers(1, 7))
def test_iroot(x, k):
    r = iroot(x, k)
    assert r ** k <= x < (r + 1) ** k


def test_powers():
    assert floor_power(32, Fraction(5, 4)) == 76  # 32^1.25 = 76.1
    assert ceil_power(16, Fraction(1, 2)) == 4
    assert ceil_power(17, Fraction(1, 2)) == 5
    assert floor_power(7, 0) == 1
    assert floor_power(16, Fraction(5, 4)) == 32


@settings(max_examples=200)
@given(st.integers(1, 10**30), st.integers(1, 10**30), st.sampled_from([8, 32, 64, 256]))
def test_log2_bounds_bracket_truth(a, b, prec):
    q = Fraction(a, b)
    lo, hi = log2_lower(q, prec), log2_upper(q, prec)
    assert lo <= hi
    truth = mp_log2(q)
    assert mpmath.mpf(lo.numerator) / lo.denominator <= truth + mpmath.mpf(2) ** -350
    assert mpmath.mpf(hi.numerator) / hi.denominator >= truth - mpmath.mpf(2) ** -350
    assert hi - lo <= Fraction(4, 1 << prec)


def test_log2_powers_of_two_exact():
    for e in range(0, 70):
        assert log2_lower(1 << e) == log2_upper(1 << e) == e
        assert log2_lower(Fraction(1, 1 << e)) == -e


def test_log2_denominators_are_dyadic():
    x = log2_lower(6, 64)
    assert x.denominator & (x.denominator - 1) == 0


def test_ceil_pow2_sqrt():
    assert ceil_pow2_sqrt(16) == 16
    assert ceil_pow2_sqrt(100) == 1024
    assert ceil_pow2_sqrt(0) == 1
    for n in range(1, 200):
        k = ceil_pow2_sqrt(n)
        assert mpmath.mpf(k - 1) < mpmath.power(2, mpmath.sqrt(n)) <= k
