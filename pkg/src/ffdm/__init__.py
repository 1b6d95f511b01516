"""Fixed-to-fixed-length binary distribution matching.

Exact enumerative matchers (optimal union-of-type-sets and constant
composition) and the divergence formulas and bounds that describe them.
"""
from ._backend import kernels
from .analysis import (
    LowerBoundReport,
    OptimalResult,
    SweepRecord,
    asymptotic_gap_constant,
    ccdm_bounds,
    endpoint_property_check,
    exhaustive_best_divergence,
    greedy_divergence,
    optimal_k,
    optimal_lower_bound,
    sweep,
)
from .codebook import (
    ConstantComposition,
    DivergenceBreakdown,
    GreedyPrefix,
    UnionOfTypeSets,
    codebook_size,
    divergence_decomposed,
    divergence_exact,
    letter_distribution,
    pletter_gap_bounds,
)
from .combinatorics import (
    BoundPair,
    binom,
    center_weighted_sum,
    log2_big,
    partial_binom_sum,
    partial_sum_bounds,
    stirling_bounds,
)
from .infotheory import (
    Probability,
    TargetSource,
    binary_divergence,
    binary_entropy,
    entropy_diff_bound,
)
from .matcher import (
    BlockLengthError,
    CcdmDesign,
    NotACodeword,
    ccdm_design,
    dematch,
    match,
    rank,
    unrank,
)

BACKEND = kernels.BACKEND
__version__ = "0.1.0"
