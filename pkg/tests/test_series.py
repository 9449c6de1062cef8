"""Tests for the exact truncated-series kernel and Bernoulli numbers."""

from fractions import Fraction
from math import comb
from random import Random

import pytest

from flagzeta.series import TruncSeries, bernoulli


def rand_unit(rng: Random, order: int) -> TruncSeries:
    """A random series with constant term 1 and small rational coefficients."""
    coeffs = [Fraction(1)] + [
        Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(order)
    ]
    return TruncSeries(order, coeffs)


def rand_positive_valuation(rng: Random, order: int) -> TruncSeries:
    coeffs = [Fraction(0)] + [
        Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(order)
    ]
    return TruncSeries(order, coeffs)


# -- worked examples ----------------------------------------------------


def test_mul_difference_of_squares():
    a = TruncSeries(4, [1, 1])
    b = TruncSeries(4, [1, -1])
    assert a * b == TruncSeries(4, [1, 0, -1])


def test_inverse_of_quadratic_is_geometric_mix():
    # 1/((1-t)(1-2t)) has coefficients 2^(k+1) - 1: the convolution of the
    # two geometric series 1 + t + t^2 + ... and 1 + 2t + 4t^2 + ...
    prod = TruncSeries(3, [1, -1]) * TruncSeries(3, [1, -2])
    expected = TruncSeries(3, [2 ** (k + 1) - 1 for k in range(4)])
    assert prod.inverse() == expected


def test_log_of_one_minus_t():
    n = 6
    g = TruncSeries(n, [1, -1])
    expected = TruncSeries(n, [0] + [Fraction(-1, k) for k in range(1, n + 1)])
    assert g.log() == expected


def test_exp_recovers_counting_series():
    # exp(sum_r (2^r + 1) t^r / r) = 1/((1-t)(1-2t)): the left side
    # exponentiates the point counts 2^r + 1, the right side is checked
    # through its independently known coefficients 2^(k+1) - 1.
    n = 4
    u = TruncSeries(n, [0] + [Fraction(2**r + 1, r) for r in range(1, n + 1)])
    expected = TruncSeries(n, [2 ** (k + 1) - 1 for k in range(n + 1)])
    assert u.exp() == expected


def test_str_rendering():
    assert str(TruncSeries(3, [1, 3, 7, 15])) == "1 + 3*t + 7*t^2 + 15*t^3"
    assert str(TruncSeries(2, [0, Fraction(-1, 2)])) == "-1/2*t"
    assert str(TruncSeries(2)) == "0"


# -- invariants ----------------------------------------------------------


def test_log_is_additive_on_products():
    rng = Random(20260815)
    n = 16
    for _ in range(100):
        f = rand_unit(rng, n)
        g = rand_unit(rng, n)
        assert (f * g).log() == f.log() + g.log()


def test_log_power_rule():
    rng = Random(4)
    n = 16
    for k in range(1, 11):
        u = rand_positive_valuation(rng, n)
        g = TruncSeries.one(n) - u
        assert (g**k).log() == k * g.log()


@pytest.mark.parametrize("order", [1, 2, 5, 16, 32])
def test_exp_log_are_mutually_inverse(order):
    rng = Random(order)
    for _ in range(20):
        g = rand_unit(rng, order)
        assert g.log().exp() == g
        u = rand_positive_valuation(rng, order)
        assert u.exp().log() == u


def test_inverse_is_two_sided():
    rng = Random(7)
    n = 12
    for _ in range(50):
        a = rand_unit(rng, n) * Fraction(rng.randint(1, 5), rng.randint(1, 5))
        assert a * a.inverse() == TruncSeries.one(n)
        assert a.inverse() * a == TruncSeries.one(n)


def test_order_mismatch_rejected():
    a = TruncSeries(3, [1])
    b = TruncSeries(4, [1])
    for op in (lambda: a + b, lambda: a * b, lambda: a - b):
        with pytest.raises(ValueError, match="order mismatch"):
            op()


def test_non_unit_has_no_inverse_or_log():
    s = TruncSeries.var(5)
    with pytest.raises(ValueError):
        s.inverse()
    with pytest.raises(ValueError):
        s.log()
    with pytest.raises(ValueError):
        TruncSeries.one(5).exp()


def test_constructor_reduces_long_input():
    assert TruncSeries(2, [1, 2, 3, 4, 5]) == TruncSeries(2, [1, 2, 3])


# -- Bernoulli numbers ---------------------------------------------------


def test_bernoulli_small_values():
    assert bernoulli(0) == 1
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(2) == Fraction(1, 6)
    assert bernoulli(3) == 0
    assert bernoulli(4) == Fraction(-1, 30)
    assert bernoulli(12) == Fraction(-691, 2730)


def test_bernoulli_defining_recurrence():
    for k in range(1, 41):
        total = sum(comb(k + 1, j) * bernoulli(j) for j in range(k + 1))
        assert total == 0


def test_bernoulli_odd_vanishing():
    for k in range(1, 20):
        assert bernoulli(2 * k + 1) == 0
