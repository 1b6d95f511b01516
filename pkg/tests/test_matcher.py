import math
import random
import time
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from ffdm.codebook import ConstantComposition, GreedyPrefix, UnionOfTypeSets, codebook_size
from ffdm.matcher import (
    BlockLengthError,
    Matcher,
    NotACodeword,
    as_matcher,
    ccdm_design,
    dematch,
    floor_log,
    match,
    optimal_type_weight,
    rank,
    unrank,
)
from ffdm.infotheory import binary_divergence

from oracles import cc_words, greedy_words, union_words


def test_rank_examples(backend):
    cc = ConstantComposition(4, 1, 4)
    assert rank("0001", cc) == 0
    assert rank("1000", cc) == 3
    assert rank("01", UnionOfTypeSets(2, 1)) == 1


def test_unrank_examples(backend):
    for n in (1, 5, 80):
        assert unrank(0, UnionOfTypeSets(n, min(2, n))) == "0" * n
    assert unrank(2, ConstantComposition(4, 1, 4)) == "0100"
    assert unrank(92, UnionOfTypeSets(8, 3)) == "11100000"


@pytest.mark.parametrize("n", range(1, 11))
def test_canonical_order_exhaustive(n, backend):
    for k in range(n + 1):
        spec = UnionOfTypeSets(n, k)
        words = union_words(n, k)
        assert [unrank(i, spec) for i in range(len(words))] == words
        assert [rank(w, spec) for w in words] == list(range(len(words)))
    for w in range(n + 1):
        size = math.comb(n, w)
        spec = ConstantComposition(n, w, size)
        assert [unrank(i, spec) for i in range(size)] == cc_words(n, w, size)


def test_greedy_prefix_cut(backend):
    spec = GreedyPrefix(6, 30)
    words = greedy_words(6, 30)
    assert [unrank(i, spec) for i in range(30)] == words
    outside = greedy_words(6, 31)[-1]
    with pytest.raises(NotACodeword):
        rank(outside, spec)


def test_rank_rejects(backend):
    with pytest.raises(NotACodeword):
        rank("0011", ConstantComposition(4, 1, 4))
    with pytest.raises(NotACodeword):
        rank("0100", ConstantComposition(4, 1, 2))
    with pytest.raises(BlockLengthError):
        rank("001", ConstantComposition(4, 1, 4))
    with pytest.raises(BlockLengthError):
        rank("00a1", ConstantComposition(4, 1, 4))
    with pytest.raises(ValueError):
        unrank(5, UnionOfTypeSets(4, 1))
    with pytest.raises(ValueError):
        unrank(-1, UnionOfTypeSets(4, 1))


@pytest.mark.parametrize("n", [100, 1000])
def test_random_roundtrip_large(n, backend):
    rng = random.Random(n)
    k = n // 4
    spec = UnionOfTypeSets(n, k)
    size = codebook_size(spec)
    samples = 10_000 if n == 1000 and backend.BACKEND == "compiled" else 300
    for _ in range(samples):
        i = rng.randrange(size)
        word = unrank(i, spec)
        assert len(word) == n and word.count("1") <= k
        assert rank(word, spec) == i


def test_large_cc_roundtrip_is_weight_preserving(backend):
    design = ccdm_design(1000, "1/4")
    rng = random.Random(7)
    for _ in range(200):
        bits = "".join(rng.choice("01") for _ in range(design.m))
        word = match(bits, design)
        assert word.count("1") == design.w == 250
        assert dematch(word, design) == bits


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 62), st.data())
def test_rank_monotone_in_integer_order(n, data):
    w = data.draw(st.integers(0, n))
    size = math.comb(n, w)
    i = data.draw(st.integers(0, size - 1))
    spec = ConstantComposition(n, w, size)
    word = unrank(i, spec)
    assert rank(word, spec) == i
    if i + 1 < size:
        assert int(unrank(i + 1, spec), 2) > int(word, 2)


def test_floor_log():
    assert floor_log(1, 3) == 0
    assert floor_log(28, 2) == 4
    for base in (2, 3, 5, 10):
        for x in (1, base - 1, base, base**7 - 1, base**7, base**40 + 3):
            m = floor_log(x, base)
            assert base**m <= x < base ** (m + 1)


def test_optimal_type_weight_is_full_argmin():
    for n in range(1, 60):
        for p in ("1/10", "1/4", "1/3", "2/5", "0.37"):
            ws = [binary_divergence(Fraction(w, n), Fraction(p)) for w in range(n + 1)]
            assert optimal_type_weight(n, p) == ws.index(min(ws))


def test_ccdm_design_examples():
    d4 = ccdm_design(4, "0.25")
    assert (d4.w, d4.m, d4.spec.size) == (1, 2, 4)
    d8 = ccdm_design(8, "0.25")
    assert (d8.w, d8.m, d8.spec.size) == (2, 4, 16)
    for n in (4, 64, 1000):
        assert ccdm_design(n, "1/4").w == n // 4
    d3 = ccdm_design(10, "0.25", B=3)
    assert 3**d3.m <= math.comb(10, d3.w) < 3 ** (d3.m + 1)


def test_match_examples(backend):
    d = ccdm_design(4, "0.25")
    assert match("00", d) == "0001"
    assert match("11", d) == "1000"
    assert match("", UnionOfTypeSets(6, 0)) == "000000"
    assert dematch("0001", d) == "00"
    assert dematch("1000", d) == "11"
    with pytest.raises(NotACodeword):
        dematch("0011", d)
    with pytest.raises(BlockLengthError):
        match("1", d)
    with pytest.raises(BlockLengthError):
        match("12", d)


def test_general_spec_uses_addressable_prefix(backend):
    spec = UnionOfTypeSets(4, 1)  # 5 words, m = 2
    mt = as_matcher(spec)
    assert mt.m == 2
    assert [match(b, spec) for b in ("00", "01", "10", "11")] == union_words(4, 1)[:4]
    with pytest.raises(NotACodeword):
        dematch("1000", spec)


def test_mirrored_target_flips_bits(backend):
    d = ccdm_design(8, "3/4")
    assert d.mirrored and d.w == 2
    for bits in ("0000", "1011", "1111"):
        word = match(bits, d)
        assert word.count("1") == 6
        assert dematch(word, d) == bits
    with pytest.raises(NotACodeword):
        dematch("11111111", d)


def test_base_three_inputs(backend):
    d = ccdm_design(10, "1/4", B=3)
    for digits in product("012", repeat=d.m):
        block = "".join(digits)
        assert dematch(match(block, d), d) == block


@pytest.mark.parametrize("n", range(1, 13))
@pytest.mark.parametrize("p", ["0.1", "0.25", "0.4"])
def test_invertibility_all_inputs(n, p, backend):
    design = ccdm_design(n, p)
    opt = UnionOfTypeSets(n, _k_hat(n, p))
    for d in (design, opt):
        mt = as_matcher(d)
        seen = set()
        for x in range(2**mt.m):
            bits = format(x, f"0{mt.m}b") if mt.m else ""
            word = match(bits, mt)
            seen.add(word)
            assert dematch(word, mt) == bits
            if d is design:
                assert word.count("1") == design.w
        assert len(seen) == 2**mt.m


def _k_hat(n, p):
    from ffdm.analysis import optimal_k
    return optimal_k(n, p).k_hat


def test_unrank_time_grows_subquadratically():
    # O(n) big-int steps: doubling n should not blow up far beyond 4x
    def cost(n):
        spec = ConstantComposition(n, n // 4, math.comb(n, n // 4))
        rng = random.Random(n)
        idx = [rng.randrange(spec.size) for _ in range(20)]
        t = time.perf_counter()
        for i in idx:
            unrank(i, spec)
        return time.perf_counter() - t

    small, big = cost(2000), cost(8000)
    assert big < 40 * small
