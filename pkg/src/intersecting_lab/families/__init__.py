"""Set families over small ground sets: kernels, labeled universes, claws and weights"""

from .claw import (
    ClawLayout,
    Graph,
    build_tn,
    enumerate_itn,
    gamma,
    gamma_compress,
    independent_sets,
    maximal_independent_sets,
    mu,
    split_x0,
    x1_star_size,
)
from .labeled import (
    LabeledUniverse,
    compress_family,
    delta,
    enumerate_lnk,
    full_compress,
    trace_xn,
)
from .sets import (
    Family,
    SetMask,
    are_cross_intersecting,
    binom,
    intersecting_subfamilies,
    is_intersecting,
    k_subsets,
    power_set,
    relabel,
    slice_family,
    star,
)
from .weights import (
    WeightVector,
    check_thm2_conditions,
    proof_weights,
    star_rhs,
    weighted_sum,
)

__all__ = [
    "ClawLayout",
    "Family",
    "Graph",
    "LabeledUniverse",
    "SetMask",
    "WeightVector",
    "are_cross_intersecting",
    "binom",
    "build_tn",
    "check_thm2_conditions",
    "compress_family",
    "delta",
    "enumerate_itn",
    "enumerate_lnk",
    "full_compress",
    "gamma",
    "gamma_compress",
    "independent_sets",
    "intersecting_subfamilies",
    "is_intersecting",
    "k_subsets",
    "maximal_independent_sets",
    "mu",
    "power_set",
    "proof_weights",
    "relabel",
    "slice_family",
    "split_x0",
    "star",
    "star_rhs",
    "trace_xn",
    "weighted_sum",
    "x1_star_size",
]
