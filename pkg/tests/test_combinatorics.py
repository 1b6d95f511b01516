import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from ffdm.combinatorics import (
    BoundPair,
    binom,
    binomial_prefix,
    center_weighted_sum,
    log2_big,
    partial_binom_sum,
    partial_sum_bounds,
    stirling_bounds,
)

from oracles import pascal, pascal_row


def test_binom_examples():
    assert binom(4, 2) == 6
    assert binom(17, 0) == 1
    assert binom(20, 10) == pascal(20, 10) == 184756
    assert binom(3, 5) == 0


def test_binom_rejects_negative():
    with pytest.raises(ValueError):
        binom(-1, 0)


@pytest.mark.parametrize("n", [0, 1, 7, 30, 61])
def test_prefix_matches_pascal(n):
    row = pascal_row(n)
    for k, c, size, weight in binomial_prefix(n):
        assert c == row[k]
        assert size == sum(row[: k + 1])
        assert weight == sum(i * row[i] for i in range(k + 1))


def test_partial_binom_sum_examples():
    assert partial_binom_sum(4, 1) == 5
    assert partial_binom_sum(8, 3) == sum(pascal_row(8)[:4]) == 93
    for n in (1, 5, 33):
        assert partial_binom_sum(n, n) == 2**n
    with pytest.raises(ValueError):
        partial_binom_sum(4, 5)


@given(st.integers(1, 300), st.data())
def test_partial_sum_difference_is_binomial(n, data):
    k = data.draw(st.integers(1, n))
    assert partial_binom_sum(n, k) - partial_binom_sum(n, k - 1) == binom(n, k)


def test_log2_big_examples():
    assert log2_big(1) == 0.0
    assert log2_big(1024) == 10.0
    assert log2_big(93) == pytest.approx(6.539158811108031, rel=1e-15)
    assert log2_big(2**5000) == 5000.0
    with pytest.raises(ValueError):
        log2_big(0)


@pytest.mark.parametrize("n", [64, 1000, 5000, 2**14])
def test_log2_big_vs_high_precision(n):
    for k in (1, n // 7, n // 3, n // 2):
        x = math.comb(n, k)
        want = mpmath.log(mpmath.mpf(x), 2)
        got = log2_big(x)
        assert abs(got - float(want)) <= 1e-12 * float(want)


def test_stirling_examples():
    bp = stirling_bounds(4, Fraction(1, 2))
    assert bp.lower == pytest.approx(5.656854249492381, rel=1e-12)
    assert bp.upper == pytest.approx(6.383076486422923, rel=1e-12)
    assert bp.contains(6)
    assert stirling_bounds(4, Fraction(1, 4)).contains(4)
    assert stirling_bounds(100, "1/2").contains(math.comb(100, 50))


@pytest.mark.parametrize("p", [0, 1, "1/3"])
def test_stirling_rejects(p):
    with pytest.raises(ValueError):
        stirling_bounds(4, p)


def test_partial_sum_bounds_examples():
    bp = partial_sum_bounds(4, Fraction(1, 4))
    # alpha = 4/3, beta = 1/2
    assert bp == BoundPair(Fraction(8, 3), Fraction(16, 3))
    assert bp.contains(5)
    for n in (1, 9, 50):
        zero = partial_sum_bounds(n, 0)
        assert zero.lower <= 1 == zero.upper
    assert partial_sum_bounds(200, "1/4").contains(partial_binom_sum(200, 50))


@pytest.mark.parametrize("p", ["1/2", "3/4", "1/3"])
def test_partial_sum_bounds_rejects(p):
    with pytest.raises(ValueError):
        partial_sum_bounds(4, p)


def test_center_weighted_examples():
    assert center_weighted_sum(4, 1) == 12 == 2 * math.comb(4, 2)
    for n in (1, 6, 13):
        assert center_weighted_sum(n, 0) == n
    assert center_weighted_sum(10, 4) == 5 * math.comb(10, 5) == 1260


def test_center_weighted_identity_exhaustive():
    for n in range(1, 65):
        row = pascal_row(n)
        for k in range(n + 1):
            direct = sum(row[i] * (n - 2 * i) for i in range(k + 1))
            assert center_weighted_sum(n, k) == direct == (k + 1) * pascal(n, k + 1)


def test_bound_pair_rejects_inverted():
    with pytest.raises(ValueError):
        BoundPair(2, 1)


@settings(max_examples=60)
@given(st.integers(1, 200), st.data())
def test_stirling_brackets_random(n, data):
    k = data.draw(st.integers(1, n - 1)) if n > 1 else None
    if k is None:
        return
    assert stirling_bounds(n, Fraction(k, n)).contains(math.comb(n, k))
