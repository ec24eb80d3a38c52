"""Exact searches, seeded sampling and theorem suites"""

from .extremal import (
    PipelineReport,
    fjt_verdict,
    largest_star,
    lnk_verdict,
    max_intersecting,
    thm5_case1_bound,
    thm5_case2_bound,
)
from .rng import SplitMix64, random_cross_pair, random_intersecting_subfamily
from .suites import SUITES, SuiteOptions, SuiteResult, run_suite, suite_table
from .symmetry import BlockSymmetry, FamilyOrbits
from .verdict import SearchVerdict
from .weighted import (
    ProofTrace,
    max_weighted_pair,
    thm2_proof_trace,
    verify_optimal_b_reduction,
)

__all__ = [
    "SUITES",
    "BlockSymmetry",
    "FamilyOrbits",
    "PipelineReport",
    "ProofTrace",
    "SearchVerdict",
    "SplitMix64",
    "SuiteOptions",
    "SuiteResult",
    "fjt_verdict",
    "largest_star",
    "lnk_verdict",
    "max_intersecting",
    "max_weighted_pair",
    "random_cross_pair",
    "random_intersecting_subfamily",
    "run_suite",
    "suite_table",
    "thm2_proof_trace",
    "thm5_case1_bound",
    "thm5_case2_bound",
    "verify_optimal_b_reduction",
]
