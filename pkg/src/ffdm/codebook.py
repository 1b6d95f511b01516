"""Implicit binary codebooks and their divergence from an i.i.d. target.

Every codebook here has the same shape: all words of weight ``0..full_upto``
followed by the lexicographically first ``extra_count`` words of weight
``extra_weight``. Constant-composition codebooks use no full classes. Sizes,
weight sums and ranks all follow from that description, so codebooks are
never listed except by the small-``n`` enumeration routines.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

from ._backend import kernels
from .combinatorics import BoundPair, binomial_prefix, log2_big
from .infotheory import (
    Probability,
    TargetSource,
    binary_divergence,
    binary_entropy,
    log2_letter_probs,
)

ENUMERATION_LIMIT = 24


@dataclass(frozen=True)
class UnionOfTypeSets:
    """All length-``n`` words of weight at most ``k``."""

    n: int
    k: int

    def __post_init__(self):
        if self.n < 1 or not 0 <= self.k <= self.n:
            raise ValueError(f"need n >= 1 and 0 <= k <= n, got n={self.n}, k={self.k}")


@dataclass(frozen=True)
class ConstantComposition:
    """The first ``size`` weight-``w`` words of length ``n`` in lexicographic order."""

    n: int
    w: int
    size: int

    def __post_init__(self):
        if self.n < 1 or not 0 <= self.w <= self.n:
            raise ValueError(f"need n >= 1 and 0 <= w <= n, got n={self.n}, w={self.w}")
        if not 1 <= self.size <= math.comb(self.n, self.w):
            raise ValueError(f"size must be in [1, C({self.n},{self.w})], got {self.size}")


@dataclass(frozen=True)
class GreedyPrefix:
    """The ``size`` most likely words under a target with ``p < 1/2``.

    Equivalently the union up to some weight ``k`` plus a lexicographic prefix
    of the weight ``k+1`` words.
    """

    n: int
    size: int

    def __post_init__(self):
        if self.n < 1 or not 1 <= self.size <= 1 << self.n:
            raise ValueError(f"need 1 <= size <= 2^n, got n={self.n}, size={self.size}")


CodebookSpec = Union[UnionOfTypeSets, ConstantComposition, GreedyPrefix]


@dataclass(frozen=True)
class Layout:
    """Full weight classes ``0..full_upto`` then a partial class."""

    n: int
    full_upto: int
    full_size: int
    full_weight: int
    extra_weight: int
    extra_count: int

    @property
    def size(self) -> int:
        return self.full_size + self.extra_count

    @property
    def weight_sum(self) -> int:
        return self.full_weight + self.extra_count * self.extra_weight


@functools.lru_cache(maxsize=512)
def layout(spec: CodebookSpec) -> Layout:
    n = spec.n
    if isinstance(spec, ConstantComposition):
        return Layout(n, -1, 0, 0, spec.w, spec.size)
    if isinstance(spec, UnionOfTypeSets):
        *_, size, weight = _last(binomial_prefix(n, spec.k))
        return Layout(n, spec.k, size, weight, spec.k + 1, 0)
    if isinstance(spec, GreedyPrefix):
        prev = (-1, 0, 0)
        for k, _, size, weight in binomial_prefix(n):
            if size > spec.size:
                break
            prev = (k, size, weight)
        k, size, weight = prev
        return Layout(n, k, size, weight, k + 1, spec.size - size)
    raise TypeError(f"not a codebook spec: {spec!r}")


def _last(it):
    item = None
    for item in it:
        pass
    return item


def codebook_size(spec: CodebookSpec) -> int:
    return layout(spec).size


def letter_distribution(spec: CodebookSpec) -> Probability:
    """Probability of a one at a uniform position of a uniform codeword."""
    lay = layout(spec)
    return Probability.ratio(lay.weight_sum, spec.n * lay.size)


def codewords(spec: CodebookSpec) -> Iterator[str]:
    """List the codewords in canonical order (small ``n`` only)."""
    if spec.n > ENUMERATION_LIMIT:
        raise ValueError(f"refusing to list codewords for n > {ENUMERATION_LIMIT}")
    lay = layout(spec)
    fmt = f"0{spec.n}b"
    for w in range(lay.full_upto + 1):
        for x in kernels.weight_class_words(spec.n, w, math.comb(spec.n, w)):
            yield format(x, fmt)
    for x in kernels.weight_class_words(spec.n, lay.extra_weight, lay.extra_count):
        yield format(x, fmt)


def _target(src) -> Probability:
    if isinstance(src, TargetSource):
        return src.p
    prob = Probability.of(src)
    if not 0.0 < prob.value < 1.0:
        raise ValueError("target probability must lie strictly between 0 and 1")
    return prob


def divergence_exact(spec: CodebookSpec, src) -> float:
    """D(U_C || P^n) by summing over every codeword.

    Limited to ``n <= ENUMERATION_LIMIT``; use :func:`divergence_decomposed`
    beyond that.
    """
    if spec.n > ENUMERATION_LIMIT:
        raise ValueError(
            f"n={spec.n} exceeds the enumeration limit {ENUMERATION_LIMIT}; "
            "use divergence_decomposed"
        )
    lay = layout(spec)
    log2p, log2q = log2_letter_probs(_target(src))
    d, size = kernels.enum_divergence(
        spec.n, lay.full_upto, lay.extra_weight, lay.extra_count, log2p, log2q
    )
    if size != lay.size:
        raise RuntimeError(f"enumerated {size} codewords, expected {lay.size}")
    return d


@dataclass(frozen=True)
class DivergenceBreakdown:
    """``total = codebook_term + letter_term`` (bits)."""

    total: float
    codebook_term: float
    letter_term: float
    p_letter: Probability
    log2_size: float


def breakdown(n: int, size: int, weight_sum: int, src) -> DivergenceBreakdown:
    """Divergence of a uniform codebook from its size and total weight alone."""
    p_letter = Probability.ratio(weight_sum, n * size)
    log2_size = log2_big(size)
    codebook_term = n * binary_entropy(p_letter) - log2_size
    letter_term = n * binary_divergence(p_letter, _target(src))
    return DivergenceBreakdown(
        codebook_term + letter_term, codebook_term, letter_term, p_letter, log2_size
    )


def divergence_decomposed(spec: CodebookSpec, src) -> DivergenceBreakdown:
    """D(U_C || P^n) as ``-log2|C| + n H(p_C)`` plus ``n D(p_C || p)``."""
    lay = layout(spec)
    return breakdown(spec.n, lay.size, lay.weight_sum, src)


def pletter_gap_bounds(n: int, k: int) -> BoundPair:
    """Exact bracket on ``k/n - p_{C_k}`` for ``k < n/2``.

    Upper end is ``(1-k/n)/(n(1-2k/n)) + 1/(2n^2 (1-2k/n)^2)``.
    """
    if n < 1 or k < 0:
        raise ValueError("need n >= 1 and k >= 0")
    if 2 * k >= n:
        raise ValueError(f"need k < n/2, got n={n}, k={k}")
    q = Fraction(k, n)
    upper = (1 - q) / (n * (1 - 2 * q)) + 1 / (2 * n**2 * (1 - 2 * q) ** 2)
    return BoundPair(Fraction(0), upper)
