"""Pure-Python kernels, used when the compiled extension is unavailable.

Words are integers whose most significant of ``n`` bits is the first letter,
so integer order on a weight class is lexicographic order on the bit strings.
``lex_rank``/``lex_unrank`` here work for any ``n``; the compiled versions are
limited to ``n <= SMALL_N``.
"""
from itertools import combinations
from math import comb, fsum, log2

SMALL_N = 62
BACKEND = "python"


def lex_rank(mask, n):
    """Rank of ``mask`` among the length-``n`` words of the same weight."""
    # colex sum of C(t, j) over set bits, binomials carried incrementally
    if mask.bit_length() > n:
        raise ValueError("mask has more than n bits")
    r = 0
    j = 1
    c = 0  # C(t, j)
    t = 0
    for bit in reversed(format(mask, "b")):
        if bit == "1":
            r += c
            c = c * (t - j) // (j + 1)
            j += 1
        t += 1
        if t == j:
            c = 1
        elif t < j:
            c = 0
        else:
            c = c * t // (t - j)
    return r


def lex_unrank(index, n, w):
    """Inverse of :func:`lex_rank` for weight ``w``."""
    mask = 0
    r = index
    t = n - 1
    c = comb(t, w) if t >= 0 else 0  # C(t, w)
    while w > 0:
        if t < 0:
            raise ValueError("index out of range for weight class")
        if c <= r:
            mask |= 1 << t
            r -= c
            c = c * w // t if t > 0 else 0
            w -= 1
        else:
            c = c * (t - w) // t
        t -= 1
    if r:
        raise ValueError("index out of range for weight class")
    return mask


def _gosper(n, w, count):
    if count <= 0:
        return
    if w == 0:
        yield 0
        return
    x = (1 << w) - 1
    limit = 1 << n
    for _ in range(count):
        if x >= limit:
            return
        yield x
        c = x & -x
        r = x + c
        x = (((r ^ x) >> 2) // c) | r


def weight_class_words(n, w, count):
    """The first ``count`` weight-``w`` words of length ``n`` in ascending order."""
    if w < 0 or w > n:
        return []
    return list(_gosper(n, w, count))


def enum_divergence(n, full_upto, extra_weight, extra_count, log2p, log2q):
    """Brute-force divergence of a uniform codebook from the i.i.d. target.

    The codebook is every word of weight ``0..full_upto`` plus the first
    ``extra_count`` words of weight ``extra_weight``. Each word's probability
    comes from its own popcount. Returns ``(divergence, size)``.
    """
    tally = [0] * (n + 1)  # words seen per popcount
    for w in range(0, full_upto + 1):
        for x in _gosper(n, w, 1 << n):
            tally[x.bit_count()] += 1
    if 0 <= extra_weight <= n:
        for x in _gosper(n, extra_weight, extra_count):
            tally[x.bit_count()] += 1
    size = sum(tally)
    if size == 0:
        raise ValueError("empty codebook")
    logs = fsum(cnt * (ones * log2p + (n - ones) * log2q) for ones, cnt in enumerate(tally))
    return -log2(size) - logs / size, size


def exhaustive_min_divergence(n, size, log2p, log2q):
    """Minimum divergence over every codebook of ``size`` words of length ``n``."""
    logs = []
    for x in range(1 << n):
        ones = x.bit_count()
        logs.append(ones * log2p + (n - ones) * log2q)
    base = -log2(size)
    best = float("inf")
    for chosen in combinations(logs, size):
        d = base - fsum(chosen) / size
        if d < best:
            best = d
    return best
