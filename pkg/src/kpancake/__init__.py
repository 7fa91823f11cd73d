"""Cyclic flip Gray codes for k-coloured permutations.

The listing visits every coloured permutation of ``1..n`` over ``k`` colours
once, consecutive entries differing by one colour-incrementing prefix
reversal, and closes into a Hamilton cycle of the k-sided pancake network.
"""

from .analysis import (
    FlipStats,
    VerificationReport,
    avg_flip_length,
    check_equivalence,
    exact_average,
    verify_arrays,
    verify_listing,
)
from .core import (
    CircularWord,
    ColouredElement,
    ColouredPermutation,
    PrePerm,
    check_capacity,
    flip,
    format_perm,
    listing_size,
    parse,
    reverse,
    rho,
    rho_sub,
    shift,
)
from .errors import CapacityError, KPancakeError, ParseError, RangeError, StateError
from .generation import (
    GreedyOutcome,
    Listing,
    generate_by_flipseq,
    generate_by_successor,
    greedy,
    iter_flipseq,
    iter_in_thread,
    iter_successor,
    listing_arrays,
    rec_listing,
    run_visitor,
    successor,
    successor_flips,
    successor_perm,
)
from .genseq import LoopFreeState, iter_sigma, loopfree_next, sigma_array, sigma_bar, sigma_recursive
from .rank import rank, rank_many, unrank, unrank_many

__version__ = "0.1.0"
