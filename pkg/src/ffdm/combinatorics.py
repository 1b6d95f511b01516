"""Exact binomial machinery and closed-form binomial bounds.

Counts are plain Python ints, so codebook sizes and ranks never round.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Real
from typing import Iterator

from .infotheory import as_fraction, binary_entropy


@dataclass(frozen=True)
class BoundPair:
    """A closed interval ``[lower, upper]``."""

    lower: Real
    upper: Real

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError(f"lower bound {self.lower} exceeds upper {self.upper}")

    def contains(self, value) -> bool:
        return self.lower <= value <= self.upper


def _check_nonneg(**kw):
    for name, v in kw.items():
        if v < 0:
            raise ValueError(f"{name} must be nonnegative, got {v}")


def binom(n: int, k: int) -> int:
    """C(n, k); zero when ``k > n``."""
    _check_nonneg(n=n, k=k)
    return math.comb(n, k)


def binomial_prefix(n: int, upto: int | None = None) -> Iterator[tuple[int, int, int, int]]:
    """Yield ``(k, C(n,k), |C_k|, W_k)`` for ``k = 0..upto``.

    ``|C_k|`` is the number of length-``n`` words of weight at most ``k`` and
    ``W_k`` their total weight. Each step costs one big-int multiply and one
    exact division.
    """
    _check_nonneg(n=n)
    upto = n if upto is None else min(upto, n)
    c = 1
    size = 0
    weight = 0
    for k in range(upto + 1):
        size += c
        weight += c * k
        yield k, c, size, weight
        c = c * (n - k) // (k + 1)


def partial_binom_sum(n: int, k: int) -> int:
    """Sum of C(n, i) for i = 0..k."""
    _check_nonneg(n=n, k=k)
    if k > n:
        raise ValueError(f"k={k} exceeds n={n}")
    size = 0
    for _, _, size, _ in binomial_prefix(n, k):
        pass
    return size


def log2_big(x: int) -> float:
    """log2 of a positive integer of any size.

    Uses the bit length plus the top 64 bits, so it never overflows a float.
    """
    if x <= 0:
        raise ValueError("log2_big needs a positive integer")
    shift = max(0, x.bit_length() - 64)
    return shift + math.log2(x >> shift)


def _integer_np(n: int, p: Fraction) -> int:
    np_ = n * p
    if np_.denominator != 1:
        raise ValueError(f"n*p = {np_} is not an integer")
    return int(np_)


def stirling_bounds(n: int, p) -> BoundPair:
    """Bracket C(n, np) by 2^{nH(p)}/sqrt(8np(1-p)) and 2^{nH(p)}/sqrt(2 pi np(1-p)).

    Values are in the count domain, as floats.
    """
    if n < 1:
        raise ValueError("n must be positive")
    p = as_fraction(p)
    if not 0 < p < 1:
        raise ValueError("p must lie strictly between 0 and 1")
    _integer_np(n, p)
    pq = float(n * p * (1 - p))
    head = 2.0 ** (n * binary_entropy(p))
    return BoundPair(head / math.sqrt(8 * pq), head / math.sqrt(2 * math.pi * pq))


def partial_sum_bounds(n: int, p) -> BoundPair:
    """Bracket the partial sum up to weight np, exactly (Fraction endpoints).

    With ``alpha = (1-p+1/n)/(1-2p+1/n)`` and
    ``beta = n(1-2p)^2/(1+n(1-2p)^2)`` the bracket is
    ``[C(n,np)*alpha*beta, C(n,np)*alpha]``. Requires ``0 <= p < 1/2``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    p = as_fraction(p)
    if not 0 <= p < Fraction(1, 2):
        raise ValueError("p must satisfy 0 <= p < 1/2")
    k = _integer_np(n, p)
    inv = Fraction(1, n)
    alpha = (1 - p + inv) / (1 - 2 * p + inv)
    spread = n * (1 - 2 * p) ** 2
    beta = spread / (1 + spread)
    head = math.comb(n, k) * alpha
    return BoundPair(head * beta, head)


def center_weighted_sum(n: int, k: int) -> int:
    """Sum of C(n, i) * (n - 2i) for i = 0..k.

    This is twice the sum weighted by ``n/2 - i``, kept doubled so it stays an
    integer for odd ``n``. It equals ``(k+1) * C(n, k+1)``.
    """
    _check_nonneg(n=n, k=k)
    if k > n:
        raise ValueError(f"k={k} exceeds n={n}")
    total = 0
    for i, c, _, _ in binomial_prefix(n, k):
        total += c * (n - 2 * i)
    return total
