"""Optimal codebook search and divergence bounds for binary matchers."""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from ._backend import kernels
from .codebook import DivergenceBreakdown, GreedyPrefix, breakdown, divergence_decomposed
from .combinatorics import BoundPair, binomial_prefix
from .infotheory import TargetSource, entropy_diff_bound, log2_letter_probs
from .matcher import CcdmDesign, ccdm_design

EXHAUSTIVE_LIMIT = 4


@dataclass(frozen=True)
class OptimalResult:
    k_hat: int
    breakdown: DivergenceBreakdown
    neighbors: tuple[float | None, float | None]
    totals: tuple[float, ...]

    def is_global_minimum(self) -> bool:
        return all(self.breakdown.total <= t for t in self.totals)


def union_scan(n: int, src):
    """Yield ``(k, breakdown)`` for the unions ``C_0 .. C_n`` in one pass."""
    src = TargetSource.of(src)
    for k, _, size, weight in binomial_prefix(n):
        yield k, breakdown(n, size, weight, src)


def optimal_k(n: int, src) -> OptimalResult:
    """Minimize D(U_{C_k} || P^n) over k by scanning every k.

    Ties go to the smaller k.
    """
    if n < 1:
        raise ValueError("n must be positive")
    best_k, best = None, None
    totals = []
    for k, bd in union_scan(n, src):
        totals.append(bd.total)
        if best is None or bd.total < best.total:
            best_k, best = k, bd
    left = totals[best_k - 1] if best_k > 0 else None
    right = totals[best_k + 1] if best_k < n else None
    return OptimalResult(best_k, best, (left, right), tuple(totals))


def greedy_divergence(n: int, src, M: int) -> float:
    """Divergence of the ``M`` most likely words of length ``n``."""
    if n < 1 or not 1 <= M <= 1 << n:
        raise ValueError(f"need 1 <= M <= 2^n, got n={n}, M={M}")
    return divergence_decomposed(GreedyPrefix(n, M), TargetSource.of(src)).total


def exhaustive_best_divergence(n: int, src, M: int) -> float:
    """Smallest divergence over every codebook of ``M`` words (``n <= 4``)."""
    if n < 1 or n > EXHAUSTIVE_LIMIT:
        raise ValueError(f"exhaustive search needs 1 <= n <= {EXHAUSTIVE_LIMIT}")
    if not 1 <= M <= 1 << n:
        raise ValueError(f"need 1 <= M <= 2^n, got M={M}")
    log2p, log2q = log2_letter_probs(TargetSource.of(src).p)
    return kernels.exhaustive_min_divergence(n, M, log2p, log2q)


def endpoint_property_check(n: int, src, k: int, tol: float = 1e-12) -> bool:
    """Check that no size between |C_k| and |C_{k+1}| beats both endpoints."""
    if not 0 <= k < n:
        raise ValueError(f"need 0 <= k < n, got n={n}, k={k}")
    src = TargetSource.of(src)
    for j, c, size, weight in binomial_prefix(n, k + 1):
        if j == k:
            base_size, base_weight = size, weight
        elif j == k + 1:
            extra = c
    d_lo = breakdown(n, base_size, base_weight, src).total
    d_hi = breakdown(n, base_size + extra, base_weight + extra * (k + 1), src).total
    floor = min(d_lo, d_hi) - tol
    for ell in range(extra + 1):
        d = breakdown(n, base_size + ell, base_weight + ell * (k + 1), src).total
        if d < floor:
            return False
    return True


@dataclass(frozen=True)
class LowerBoundReport:
    n: int
    k: int
    q_hat: float
    epsilon_n: float
    bound_bits: float
    asymptotic_constant: float
    divergence_bits: float


def epsilon_n(n: int, k: int) -> float:
    q = k / n
    return (1 - q) / (n * (1 - 2 * q)) + 1 / (2 * n * n * (1 - 2 * q) ** 2)


def optimal_lower_bound(n: int, k: int, src) -> LowerBoundReport:
    """Logarithmic lower bound on D(U_{C_k} || P^n) for ``k/n < 1/2``.

    ``bound_bits`` is ``-inf`` when ``k/n <= epsilon_n`` (the entropy
    difference bound needs ``k/n - epsilon_n > 0``); that is always a valid
    lower bound.
    """
    if n < 1 or k < 0:
        raise ValueError("need n >= 1 and k >= 0")
    if 2 * k >= n:
        raise ValueError(f"bound needs k/n < 1/2, got n={n}, k={k}")
    src = TargetSource.of(src)
    q = k / n
    eps = epsilon_n(n, k)
    if q - eps > 0:
        bound = (
            0.5 * math.log2(n)
            - n * entropy_diff_bound(q, eps)
            + 0.5 * math.log2(
                2 * math.pi * q * (1 - q) * (1 - 2 * q + 1 / n) ** 2 / (1 - q + 1 / n) ** 2
            )
        )
    else:
        bound = -math.inf
    actual = None
    for j, _, size, weight in binomial_prefix(n, k):
        if j == k:
            actual = breakdown(n, size, weight, src).total
    return LowerBoundReport(n, k, q, eps, bound, asymptotic_gap_constant(src), actual)


def asymptotic_gap_constant(src) -> float:
    """Limit lower bound on D_opt(n) - log2(n)/2 as n grows."""
    p = TargetSource.of(src).value
    return 0.5 * math.log2(2 * math.pi * p * (1 - 2 * p) ** 2 / (1 - p)) - (
        (1 - p) / (1 - 2 * p)
    ) * math.log2((1 - p) / p)


def ccdm_codebook_bounds(n: int, w: int, B: int) -> BoundPair:
    """Bracket on -log2|C| + n H(w/n) for a CCDM of size B**m.

    Upper end is ``log2(n)/2 + log2(8 B^2 pc(1-pc))/2``: it follows from
    ``|C| > C(n, w)/B`` and the lower Stirling bound.
    """
    if w <= 0 or w >= n:
        raise ValueError(f"bounds need 0 < w < n, got n={n}, w={w}")
    pc = w / n
    head = 0.5 * math.log2(n)
    var = pc * (1 - pc)
    return BoundPair(
        head + 0.5 * math.log2(2 * math.pi * var), head + 0.5 * math.log2(8 * B * B * var)
    )


def ccdm_bounds(n: int, src, B: int = 2) -> BoundPair:
    """Bounds (bits) on the codebook term of the optimal-type CCDM.

    The full CCDM divergence adds ``n D(w/n || p)`` to both ends.
    """
    design = ccdm_design(n, src, B)
    return ccdm_codebook_bounds(n, design.w, B)


def ccdm_divergence(design: CcdmDesign) -> DivergenceBreakdown:
    return divergence_decomposed(design.spec, design.source)


@dataclass(frozen=True)
class SweepRecord:
    n: int
    k_hat: int | None = None
    log2_size: float = math.nan
    p_letter: float = math.nan
    d_opt_total: float = math.nan
    d_opt_codebook_term: float = math.nan
    d_opt_letter_term: float = math.nan
    eq17_lower: float = math.nan
    d_ccdm: float = math.nan
    ccdm_lower: float = math.nan
    ccdm_upper: float = math.nan
    gap: float = math.nan
    flags: str = ""


FIELDS = [
    "n", "k_hat", "log2_size", "p_letter", "d_opt_total", "d_opt_codebook_term",
    "d_opt_letter_term", "eq17_lower", "d_ccdm", "ccdm_lower", "ccdm_upper", "gap",
    "flags",
]


def sweep_one(n: int, src, B: int = 2) -> SweepRecord:
    try:
        src = TargetSource.of(src)
        opt = optimal_k(n, src)
    except (ValueError, OverflowError) as exc:
        return SweepRecord(n, flags=f"error:{exc}")
    bd = opt.breakdown
    flags = []
    if 2 * opt.k_hat < n:
        eq17 = optimal_lower_bound(n, opt.k_hat, src).bound_bits
    else:
        eq17 = math.nan
        flags.append("khat_ge_half")
    design = ccdm_design(n, src, B)
    d_ccdm = ccdm_divergence(design).total
    if 0 < design.w < n:
        cb = ccdm_codebook_bounds(n, design.w, B)
        lo, hi = cb.lower, cb.upper
    else:
        lo = hi = math.nan
        flags.append("ccdm_degenerate")
    return SweepRecord(
        n=n,
        k_hat=opt.k_hat,
        log2_size=bd.log2_size,
        p_letter=bd.p_letter.value,
        d_opt_total=bd.total,
        d_opt_codebook_term=bd.codebook_term,
        d_opt_letter_term=bd.letter_term,
        eq17_lower=eq17,
        d_ccdm=d_ccdm,
        ccdm_lower=lo,
        ccdm_upper=hi,
        gap=bd.total - 0.5 * math.log2(n),
        flags=";".join(flags),
    )


def sweep(src, n_values, B: int = 2, jobs: int = 1) -> list[SweepRecord]:
    """One :class:`SweepRecord` per ``n``, in input order."""
    src = TargetSource.of(src)
    n_values = list(n_values)
    if jobs > 1 and len(n_values) > 1:
        with ProcessPoolExecutor(jobs) as pool:
            return list(pool.map(sweep_one, n_values, [src] * len(n_values),
                                 [B] * len(n_values)))
    return [sweep_one(n, src, B) for n in n_values]

