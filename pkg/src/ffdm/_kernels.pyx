# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: 64-bit enumerative coding and codebook enumeration.

Same contracts as ``_kernels_py``. Rank/unrank accept ``n <= SMALL_N`` only,
where every binomial and every rank fits in an unsigned 64-bit word.
"""
from libc.math cimport log2, INFINITY
from libc.stdint cimport uint64_t

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil

SMALL_N = 62
BACKEND = "compiled"

cdef uint64_t PASCAL[64][64]


cdef void _fill_pascal() noexcept:
    cdef int t, j
    for t in range(64):
        for j in range(64):
            PASCAL[t][j] = 0
    for t in range(63):
        PASCAL[t][0] = 1
        for j in range(1, t + 1):
            PASCAL[t][j] = PASCAL[t - 1][j - 1] + PASCAL[t - 1][j]


_fill_pascal()


def lex_rank(object mask, int n):
    if n > SMALL_N or n < 0:
        raise ValueError("compiled rank supports n <= %d" % SMALL_N)
    if mask < 0 or mask.bit_length() > n:
        raise ValueError("mask has more than n bits")
    cdef uint64_t m = mask
    cdef uint64_t r = 0
    cdef int t
    cdef int j = 1
    for t in range(n):
        if (m >> t) & 1:
            r += PASCAL[t][j]
            j += 1
    return r


def lex_unrank(object index, int n, int w):
    if n > SMALL_N or n < 0:
        raise ValueError("compiled unrank supports n <= %d" % SMALL_N)
    if w < 0 or w > n or index < 0 or index >= PASCAL[n][w]:
        raise ValueError("index out of range for weight class")
    cdef uint64_t r = index
    cdef uint64_t mask = 0
    cdef int t = n - 1
    while w > 0:
        while PASCAL[t][w] > r:
            t -= 1
        mask |= (<uint64_t>1) << t
        r -= PASCAL[t][w]
        w -= 1
        t -= 1
    return mask


cdef inline uint64_t _next_same_weight(uint64_t x) noexcept nogil:
    cdef uint64_t c = x & (~x + 1)
    cdef uint64_t r = x + c
    return (((r ^ x) >> 2) // c) | r


def weight_class_words(int n, int w, object count):
    if n > 63 or n < 0:
        raise ValueError("n too large for 64-bit words")
    if w < 0 or w > n or count <= 0:
        return []
    if w == 0:
        return [0]
    cdef uint64_t limit = (<uint64_t>1) << n
    cdef uint64_t x = ((<uint64_t>1) << w) - 1
    cdef long long todo = min(count, 1 << n)
    out = []
    while todo > 0 and x < limit:
        out.append(x)
        x = _next_same_weight(x)
        todo -= 1
    return out


cdef inline void _kahan_add(double *s, double *comp, double v) noexcept nogil:
    # Neumaier variant
    cdef double t = s[0] + v
    if abs(s[0]) >= abs(v):
        comp[0] += (s[0] - t) + v
    else:
        comp[0] += (v - t) + s[0]
    s[0] = t


cdef void _sum_class(int n, int w, long long count, double log2p, double log2q,
                     double *s, double *comp, long long *size) noexcept nogil:
    cdef uint64_t limit = (<uint64_t>1) << n
    cdef uint64_t x
    cdef int ones
    if w < 0 or w > n or count <= 0:
        return
    if w == 0:
        x = 0
    else:
        x = ((<uint64_t>1) << w) - 1
    while count > 0 and x < limit:
        ones = __builtin_popcountll(x)
        _kahan_add(s, comp, ones * log2p + (n - ones) * log2q)
        size[0] += 1
        count -= 1
        if w == 0:
            break
        x = _next_same_weight(x)


def enum_divergence(int n, int full_upto, int extra_weight, object extra_count,
                    double log2p, double log2q):
    if n > 40 or n < 0:
        raise ValueError("enumeration limited to n <= 40")
    cdef double s = 0.0, comp = 0.0
    cdef long long size = 0
    cdef long long everything = (<long long>1) << n
    cdef long long extra = min(extra_count, everything)
    cdef int w
    with nogil:
        for w in range(0, full_upto + 1):
            _sum_class(n, w, everything, log2p, log2q, &s, &comp, &size)
        _sum_class(n, extra_weight, extra, log2p, log2q, &s, &comp, &size)
    if size == 0:
        raise ValueError("empty codebook")
    return -log2(<double>size) - (s + comp) / size, size


def exhaustive_min_divergence(int n, int size, double log2p, double log2q):
    if n > 5 or n < 0:
        raise ValueError("exhaustive search limited to n <= 5")
    cdef int total = 1 << n
    if size < 1 or size > total:
        raise ValueError("size out of range")
    cdef double logs[32]
    cdef int idx[32]
    cdef int i, j, ones
    for i in range(total):
        ones = __builtin_popcountll(i)
        logs[i] = ones * log2p + (n - ones) * log2q
    for i in range(size):
        idx[i] = i
    cdef double base = -log2(<double>size)
    cdef double best = INFINITY
    cdef double s, comp, d
    with nogil:
        while True:
            s = 0.0
            comp = 0.0
            for i in range(size):
                _kahan_add(&s, &comp, logs[idx[i]])
            d = base - (s + comp) / size
            if d < best:
                best = d
            # next combination in lexicographic order
            i = size - 1
            while i >= 0 and idx[i] == total - size + i:
                i -= 1
            if i < 0:
                break
            idx[i] += 1
            for j in range(i + 1, size):
                idx[j] = idx[j - 1] + 1
    return best
