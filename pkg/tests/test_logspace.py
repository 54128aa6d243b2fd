import math

import pytest
from hypothesis import given, strategies as st

from fibercount.logspace import (
    LogCount,
    log_binomial,
    log_factorial,
    log_mul,
    log_prod,
    log_sum_exp,
)


def test_mul_adds_exponents():
    assert log_mul(LogCount(math.log(3)), LogCount(math.log(4))).ln_value == pytest.approx(math.log(12))


def test_zero_absorbs():
    assert log_mul(LogCount.zero(), LogCount(math.log(5))).is_zero


def test_repeated_doubling_matches_integer():
    two = LogCount.from_int(2)
    total = log_prod([two] * 20)
    assert total.ln_value == pytest.approx(20 * math.log(2), rel=1e-15)
    assert round(total.to_float()) == 2 ** 20 == 1_048_576


def test_table_row_ten():
    assert round(log_binomial(499500, 10).ln_value, 2) == 116.11


def test_binomial_small_cases():
    assert log_binomial(5, 0).ln_value == 0.0
    assert log_binomial(30, 15).ln_value == pytest.approx(math.log(155117520), rel=1e-13)
    assert log_binomial(4, 5).is_zero
    assert log_binomial(4, -1).is_zero


def test_factorial():
    assert log_factorial(0).ln_value == 0.0
    assert log_factorial(10).ln_value == pytest.approx(math.log(3628800), rel=1e-14)


def _stirling(n):
    # ln n! by the Stirling series with four correction terms
    return (n * math.log(n) - n + 0.5 * math.log(2 * math.pi * n)
            + 1 / (12 * n) - 1 / (360 * n ** 3) + 1 / (1260 * n ** 5) - 1 / (1680 * n ** 7))


def test_factorial_large_against_stirling():
    assert log_factorial(1000).ln_value == pytest.approx(_stirling(1000), rel=1e-9)


def test_logcount_conversions():
    c = LogCount.from_int(1000)
    assert c.log10 == pytest.approx(3.0)
    assert LogCount.from_int(0).is_zero
    assert (c / LogCount.from_int(10)).to_float() == pytest.approx(100.0)
    assert LogCount(16988 * math.log(10) + math.log(1.26)).scientific() == "1.26e16988"


@given(st.integers(0, 60).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n))))
def test_binomial_matches_integer(nk):
    n, k = nk
    exact = math.comb(n, k)
    assert math.exp(log_binomial(n, k).ln_value) == pytest.approx(exact, rel=1e-12)


@given(st.integers(0, 10 ** 6).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n))))
def test_binomial_symmetry_is_exact(nk):
    n, k = nk
    assert log_binomial(n, k) == log_binomial(n, n - k)


@given(st.integers(2, 5000).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, n - 1))))
def test_pascal_in_log_space(nk):
    n, k = nk
    lhs = log_sum_exp(log_binomial(n - 1, k - 1), log_binomial(n - 1, k)).ln_value
    assert lhs == pytest.approx(log_binomial(n, k).ln_value, rel=1e-10)
