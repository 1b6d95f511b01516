"""Invertible fixed-length matchers via enumerative coding.

Canonical order inside a codebook is weight ascending, then lexicographic
(``"0001" < "0010" < ... < "1000"``). Within a weight class the lexicographic
index is the combinatorial-number-system rank of the word read as an integer
with the first letter most significant.

Bit blocks are ``str`` of ``'0'``/``'1'``. For ``B > 2`` input blocks are
strings of base-``B`` digits (``0-9a-z``), most significant first.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from . import _kernels_py
from ._backend import kernels
from .codebook import (
    CodebookSpec,
    ConstantComposition,
    GreedyPrefix,
    UnionOfTypeSets,
    layout,
)
from .combinatorics import binomial_prefix
from .infotheory import Probability, TargetSource, binary_divergence

_DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"


class BlockLengthError(ValueError):
    """Input block has the wrong length or alphabet."""


class NotACodeword(ValueError):
    """Word is not a member of the codebook."""


def _lex_rank(mask, n):
    if n <= kernels.SMALL_N:
        return kernels.lex_rank(mask, n)
    return _kernels_py.lex_rank(mask, n)


def _lex_unrank(index, n, w):
    if n <= kernels.SMALL_N:
        return kernels.lex_unrank(index, n, w)
    return _kernels_py.lex_unrank(index, n, w)


def _parse_word(codeword, n):
    if not isinstance(codeword, str):
        codeword = "".join(str(int(b)) for b in codeword)
    if len(codeword) != n or codeword.strip("01"):
        raise BlockLengthError(f"expected {n} binary digits, got {codeword!r}")
    return int(codeword, 2) if n else 0


def _class_offset(spec: CodebookSpec, w: int) -> int:
    # number of codewords of weight < w
    if isinstance(spec, ConstantComposition) or w == 0:
        return 0
    *_, size, _ = _last_prefix(spec.n, w - 1)
    return size


def _last_prefix(n, k):
    item = None
    for item in binomial_prefix(n, k):
        pass
    return item


def rank(codeword, spec: CodebookSpec) -> int:
    """0-based position of ``codeword`` in the canonical order of ``spec``."""
    mask = _parse_word(codeword, spec.n)
    w = mask.bit_count()
    lay = layout(spec)
    if w <= lay.full_upto:
        return _class_offset(spec, w) + _lex_rank(mask, spec.n)
    if w == lay.extra_weight:
        r = _lex_rank(mask, spec.n)
        if r < lay.extra_count:
            return lay.full_size + r
    raise NotACodeword(f"{codeword!r} is not in {spec}")


def unrank(index: int, spec: CodebookSpec) -> str:
    """Codeword at position ``index``; inverse of :func:`rank`."""
    lay = layout(spec)
    if not 0 <= index < lay.size:
        raise ValueError(f"index {index} outside [0, {lay.size})")
    n = spec.n
    if index >= lay.full_size:
        mask = _lex_unrank(index - lay.full_size, n, lay.extra_weight)
    else:
        prev = 0
        for w, _, size, _ in binomial_prefix(n, lay.full_upto):
            if index < size:
                break
            prev = size
        mask = _lex_unrank(index - prev, n, w)
    return format(mask, f"0{n}b") if n else ""


def floor_log(x: int, base: int) -> int:
    """Largest ``m`` with ``base**m <= x``, exactly."""
    if x < 1 or base < 2:
        raise ValueError("need x >= 1 and base >= 2")
    if base == 2:
        return x.bit_length() - 1
    m = int((x.bit_length() - 1) / math.log2(base))
    while base ** (m + 1) <= x:
        m += 1
    while base**m > x:
        m -= 1
    return m


@dataclass(frozen=True)
class CcdmDesign:
    """Constant-composition matcher of ``B**m`` codewords of weight ``w``."""

    n: int
    w: int
    B: int
    m: int
    spec: ConstantComposition
    source: TargetSource | None = None

    @property
    def mirrored(self) -> bool:
        return self.source is not None and self.source.mirrored


def optimal_type_weight(n: int, src) -> int:
    """Weight ``w`` minimizing D(w/n || p); ties go to the smaller ``w``."""
    src = TargetSource.of(src)
    num, den = src.p.exact or (None, None)
    if num is None:
        lo = math.floor(n * src.value)
    else:
        lo = (n * num) // den
    # D(w/n || p) is convex in w with its real minimum at np
    best, best_d = None, math.inf
    for w in (lo, lo + 1):
        if 0 <= w <= n:
            d = binary_divergence(Probability.ratio(w, n), src.p)
            if d < best_d:
                best, best_d = w, d
    return best


def ccdm_design(n: int, src, B: int = 2) -> CcdmDesign:
    """Optimal-type CCDM of block length ``n`` fed by ``B``-ary inputs."""
    if n < 1:
        raise ValueError("n must be positive")
    if B < 2:
        raise ValueError("B must be at least 2")
    src = TargetSource.of(src)
    w = optimal_type_weight(n, src)
    count = math.comb(n, w)
    m = floor_log(count, B)
    return CcdmDesign(n, w, B, m, ConstantComposition(n, w, B**m), src)


@dataclass(frozen=True)
class Matcher:
    """A codebook together with its input alphabet and block length."""

    spec: CodebookSpec
    B: int
    m: int
    mirrored: bool = False

    @property
    def n(self) -> int:
        return self.spec.n


def as_matcher(design, B: int = 2) -> Matcher:
    """Build a :class:`Matcher` from a CCDM design or a bare codebook spec.

    For a bare spec only the first ``B**floor(log_B |C|)`` codewords are
    addressable.
    """
    if isinstance(design, Matcher):
        return design
    if isinstance(design, CcdmDesign):
        return Matcher(design.spec, design.B, design.m, design.mirrored)
    if isinstance(design, (UnionOfTypeSets, ConstantComposition, GreedyPrefix)):
        return Matcher(design, B, floor_log(layout(design).size, B))
    raise TypeError(f"cannot build a matcher from {design!r}")


def _flip(word: str) -> str:
    return word.translate(str.maketrans("01", "10"))


def _parse_digits(block, B, m):
    if not isinstance(block, str):
        block = "".join(_DIGITS[int(d)] for d in block)
    block = block.lower()
    allowed = _DIGITS[:B]
    if len(block) != m or any(ch not in allowed for ch in block):
        raise BlockLengthError(f"expected {m} base-{B} digits, got {block!r}")
    return int(block, B) if m else 0


def _format_digits(value, B, m):
    if B == 2:
        return format(value, f"0{m}b") if m else ""
    digits = []
    for _ in range(m):
        value, d = divmod(value, B)
        digits.append(_DIGITS[d])
    return "".join(reversed(digits))


def match(block, design, B: int = 2) -> str:
    """Map an input block of ``m`` base-``B`` digits to a codeword of length ``n``."""
    mt = as_matcher(design, B)
    index = _parse_digits(block, mt.B, mt.m)
    word = unrank(index, mt.spec)
    return _flip(word) if mt.mirrored else word


def dematch(codeword, design, B: int = 2) -> str:
    """Recover the input block from a codeword; inverse of :func:`match`."""
    mt = as_matcher(design, B)
    if not isinstance(codeword, str):
        codeword = "".join(str(int(b)) for b in codeword)
    if mt.mirrored:
        _parse_word(codeword, mt.n)
        codeword = _flip(codeword)
    index = rank(codeword, mt.spec)
    if index >= mt.B**mt.m:
        raise NotACodeword(f"{codeword!r} lies beyond the addressable prefix")
    return _format_digits(index, mt.B, mt.m)
