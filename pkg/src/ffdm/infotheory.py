"""Binary entropy and divergence, in bits.

Probabilities may carry an exact ``num/den`` pair. When they do, ratios such
as ``phat/p`` and complements such as ``1 - p`` are formed in exact integer
arithmetic and rounded once, which keeps the letter-distribution term exactly
zero whenever the letter distribution equals the target.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


def as_fraction(x) -> Fraction:
    """Coerce ``x`` to a Fraction.

    Strings may be decimals (``"0.1"``) or fractions (``"1/4"``). Floats go
    through their shortest repr, so ``0.1`` becomes ``1/10``.
    """
    if isinstance(x, Probability):
        if x.exact is None:
            return Fraction(repr(x.value))
        return Fraction(*x.exact)
    if isinstance(x, (Fraction, int)):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError(f"not a finite number: {x}")
        return Fraction(repr(x))
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot parse probability {x!r}") from exc
    raise TypeError(f"cannot interpret {type(x).__name__} as a number")


@dataclass(frozen=True)
class Probability:
    """A probability with an optional exact, possibly unreduced, ratio."""

    value: float
    exact: tuple[int, int] | None = None

    def __post_init__(self):
        if not 0.0 <= self.value <= 1.0:
            raise ValueError(f"probability {self.value} outside [0, 1]")

    @classmethod
    def ratio(cls, num: int, den: int) -> Probability:
        if den <= 0 or not 0 <= num <= den:
            raise ValueError(f"{num}/{den} is not a probability")
        return cls(num / den, (num, den))

    @classmethod
    def of(cls, x) -> Probability:
        if isinstance(x, Probability):
            return x
        f = as_fraction(x)
        return cls.ratio(f.numerator, f.denominator)

    def complement(self) -> Probability:
        if self.exact is None:
            return Probability(1.0 - self.value)
        num, den = self.exact
        return Probability.ratio(den - num, den)

    def as_fraction(self) -> Fraction:
        return as_fraction(self)

    def __float__(self):
        return self.value


@dataclass(frozen=True)
class TargetSource:
    """Binary memoryless target with ``0 < p < 1/2``.

    Targets above one half are stored complemented with ``mirrored`` set;
    complementing every output bit maps one case onto the other without
    changing any divergence.
    """

    p: Probability
    mirrored: bool = False

    def __post_init__(self):
        if not 0.0 < self.p.value < 0.5 or self.p.exact is not None and not (
            0 < 2 * self.p.exact[0] < self.p.exact[1]
        ):
            raise ValueError("target must satisfy 0 < p < 1/2 after normalization")

    @classmethod
    def of(cls, x) -> TargetSource:
        if isinstance(x, TargetSource):
            return x
        prob = Probability.of(x)
        if prob.exact is not None:
            num, den = prob.exact
            if num == 0 or num == den or 2 * num == den:
                raise ValueError(f"target p={num}/{den} is degenerate (0, 1/2 or 1)")
            if 2 * num > den:
                return cls(prob.complement(), mirrored=True)
            return cls(prob)
        if prob.value in (0.0, 0.5, 1.0):
            raise ValueError(f"target p={prob.value} is degenerate (0, 1/2 or 1)")
        if prob.value > 0.5:
            return cls(prob.complement(), mirrored=True)
        return cls(prob)

    @property
    def value(self) -> float:
        return self.p.value


def _parts(x):
    """(x, 1 - x) as floats plus the exact pair if known."""
    x = Probability.of(x)
    if x.exact is None:
        return x.value, 1.0 - x.value, None
    num, den = x.exact
    return num / den, (den - num) / den, (num, den)


def binary_entropy(x) -> float:
    """H(x) in bits with 0 log 0 = 0."""
    a, b, _ = _parts(x)
    h = 0.0
    if a > 0:
        h -= a * math.log2(a)
    if b > 0:
        h -= b * math.log2(b)
    return h


def _log2_ratio(u, v):
    # log2((u0/u1) / (v0/v1)) with one rounding
    return math.log2((u[0] * v[1]) / (u[1] * v[0]))


def binary_divergence(phat, p) -> float:
    """D(phat || p) in bits with 0 log 0 = 0."""
    a, abar, ea = _parts(phat)
    b, bbar, eb = _parts(p)
    d = 0.0
    if a > 0:
        if b == 0:
            raise ValueError("phat puts mass on 1 where p has none")
        if ea and eb:
            d += a * _log2_ratio(ea, eb)
        else:
            d += a * math.log2(a / b)
    if abar > 0:
        if bbar == 0:
            raise ValueError("phat puts mass on 0 where p has none")
        if ea and eb:
            d += abar * _log2_ratio((ea[1] - ea[0], ea[1]), (eb[1] - eb[0], eb[1]))
        else:
            d += abar * math.log2(abar / bbar)
    return d


def entropy_diff_bound(p, eps) -> float:
    """eps * log2((1 - p + eps) / (p - eps)), an upper bound on H(p) - H(p - eps)."""
    p = float(Probability.of(p))
    eps = float(eps)
    if not 0 < p < 1:
        raise ValueError("p must lie strictly between 0 and 1")
    if eps <= 0 or p - eps <= 0:
        raise ValueError("need 0 < eps < p")
    return eps * math.log2((1 - p + eps) / (p - eps))


def log2_letter_probs(p) -> tuple[float, float]:
    """(log2 p, log2 (1 - p)) for per-word probability sums."""
    a, b, _ = _parts(p)
    return math.log2(a), math.log2(b)
