"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import math
import random
import timeit

from ffdm import _backend
from ffdm.infotheory import log2_letter_probs


def cases(k):
    log2p, log2q = log2_letter_probs("0.25")
    rng = random.Random(1)
    n = 60
    masks = []
    for _ in range(2000):
        bits = rng.sample(range(n), 15)
        masks.append(sum(1 << b for b in bits))
    top = math.comb(n, 15)
    indices = [rng.randrange(top) for _ in range(2000)]
    return {
        "lex_rank n=60 x2000": lambda: [k.lex_rank(x, n) for x in masks],
        "lex_unrank n=60 x2000": lambda: [k.lex_unrank(i, n, 15) for i in indices],
        "weight_class_words n=20 w=10": lambda: k.weight_class_words(20, 10, math.comb(20, 10)),
        "enum_divergence n=20 (2^20 words)":
            lambda: k.enum_divergence(20, 20, 21, 0, log2p, log2q),
        "exhaustive_min_divergence n=4 M=8":
            lambda: k.exhaustive_min_divergence(4, 8, log2p, log2q),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    py = _backend.load("python")
    try:
        cc = _backend.load("compiled")
    except ImportError:
        raise SystemExit("compiled extension not built; run pip install --no-build-isolation -e .")
    py_cases, cc_cases = cases(py), cases(cc)
    print(f"{'kernel':38s} {'python (ms)':>12s} {'compiled (ms)':>14s} {'speedup':>8s}")
    for name in py_cases:
        t_py = min(timeit.repeat(py_cases[name], number=1, repeat=args.repeat)) * 1e3
        t_cc = min(timeit.repeat(cc_cases[name], number=1, repeat=args.repeat)) * 1e3
        print(f"{name:38s} {t_py:12.2f} {t_cc:14.3f} {t_py / t_cc:7.1f}x")


if __name__ == "__main__":
    main()
