"""Tests for weighted cross-intersecting pairs and the counting-argument trace"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from intersecting_lab.exceptions import DomainError, SizeLimitError
from intersecting_lab.families.sets import Family, are_cross_intersecting, is_intersecting
from intersecting_lab.families.weights import (
    WeightVector,
    proof_weights,
    random_valid_weights,
    star_rhs,
)
from intersecting_lab.search.rng import SplitMix64
from intersecting_lab.search.weighted import (
    max_weighted_pair,
    thm2_proof_trace,
    verify_optimal_b_reduction,
)


class TestExhaustive:
    """Tests for the exhaustive maximum"""

    def test_proof_weights_n3(self):
        a, b = proof_weights(3, 2)
        verdict = max_weighted_pair(3, a, b)
        assert verdict.optimum == 5
        assert verdict.largest_star_value == 5
        assert verdict.star_property == "holds"
        assert verdict.annotations["star_pair_optimal"] is True

    def test_witness_is_valid_pair(self):
        a, b = proof_weights(3, 2)
        first, second = max_weighted_pair(3, a, b).witness
        assert is_intersecting(first)
        assert are_cross_intersecting(first, second)

    def test_unit_a_weights_n2(self):
        verdict = max_weighted_pair(2, WeightVector.of([1, 1, 1]), WeightVector.zeros(2))
        assert verdict.optimum == 2
        assert verdict.optima is not None
        assert len(verdict.optima) >= 1

    def test_zero_weights(self):
        verdict = max_weighted_pair(3, WeightVector.zeros(3), WeightVector.zeros(3))
        assert verdict.optimum == 0
        assert verdict.star_property == "holds"

    def test_to_dict_uses_rational_strings(self):
        a = WeightVector.of(["1/3", "1/3", "1/3"])
        verdict = max_weighted_pair(2, a, WeightVector.zeros(2))
        document = verdict.to_dict()
        assert document["optimum"] == "2/3"
        assert document["largest_star"]["size"] == "2/3"
        assert set(document["witness"]) == {"A", "B"}

    @settings(max_examples=15, deadline=None)
    @given(st.integers(min_value=0, max_value=2**32))
    def test_never_beats_star(self, seed):
        a, b = random_valid_weights(3, SplitMix64(seed))
        verdict = max_weighted_pair(3, a, b)
        assert verdict.optimum <= star_rhs(a, b)

    def test_guard(self):
        with pytest.raises(SizeLimitError):
            max_weighted_pair(5, WeightVector.zeros(5), WeightVector.zeros(5))

    def test_rejects_invalid_weights(self):
        with pytest.raises(DomainError, match="hypothesis"):
            max_weighted_pair(2, WeightVector.of([0, 0, 1]), WeightVector.zeros(2))

    def test_rejects_mismatched_n(self):
        with pytest.raises(DomainError):
            max_weighted_pair(3, WeightVector.zeros(2), WeightVector.zeros(3))


class TestSampled:
    """Tests for sampled mode"""

    def test_deterministic_per_seed(self):
        a, b = proof_weights(5, 3)
        first = max_weighted_pair(5, a, b, mode="sampled", seed=7, trials=40)
        second = max_weighted_pair(5, a, b, mode="sampled", seed=7, trials=40)
        assert first.to_dict() == second.to_dict()
        assert first.seed == 7

    def test_no_sample_exceeds_star(self):
        a, b = proof_weights(5, 3)
        verdict = max_weighted_pair(5, a, b, mode="sampled", seed=1, trials=60, trace=True)
        assert verdict.annotations["exceeded"] == 0
        assert verdict.annotations["trace_failures"] == 0
        assert verdict.optimum == star_rhs(a, b)

    def test_needs_seed(self):
        with pytest.raises(DomainError):
            max_weighted_pair(3, WeightVector.zeros(3), WeightVector.zeros(3), mode="sampled")

    def test_guard(self):
        zeros = WeightVector.zeros(13)
        with pytest.raises(SizeLimitError):
            max_weighted_pair(13, zeros, zeros, mode="sampled", seed=1)

    def test_unknown_mode(self):
        zeros = WeightVector.zeros(2)
        with pytest.raises(DomainError):
            max_weighted_pair(2, zeros, zeros, mode="greedy")  # type: ignore[arg-type]


class TestProofTrace:
    """Tests for thm2_proof_trace"""

    def test_triangle(self, triangle_family):
        a = WeightVector.of([1, 1, 1, 1])
        trace = thm2_proof_trace(triangle_family, triangle_family, a, WeightVector.zeros(3))
        assert trace.passed
        assert trace.c[2] == 3
        assert trace.telescoped == 4
        assert trace.star_value == 4
        assert trace.total == 3
        assert [row.r for row in trace.rows] == [1]

    def test_even_n_has_middle_row(self):
        a, b = proof_weights(4, 3)
        star_at_one = Family.from_sets(4, [[1], [1, 2], [1, 3], [1, 4]])
        trace = thm2_proof_trace(star_at_one, star_at_one, a, b)
        assert trace.passed, trace.failures()
        assert trace.rows[-1].middle_bound is not None
        assert trace.to_dict()["rows"][-1]["r"] == 2

    def test_rejects_empty(self, triangle_family):
        zeros = WeightVector.zeros(3)
        with pytest.raises(DomainError):
            thm2_proof_trace(Family.empty(3), triangle_family, zeros, zeros)

    def test_rejects_non_cross_intersecting(self):
        zeros = WeightVector.zeros(3)
        first = Family.from_sets(3, [[1]])
        second = Family.from_sets(3, [[2]])
        with pytest.raises(DomainError):
            thm2_proof_trace(first, second, zeros, zeros)

    def test_rejects_non_intersecting(self):
        zeros = WeightVector.zeros(3)
        first = Family.from_sets(3, [[1], [2]])
        second = Family.from_sets(3, [[1, 2]])
        with pytest.raises(DomainError):
            thm2_proof_trace(first, second, zeros, zeros)


class TestReductionCheck:
    """Tests for verify_optimal_b_reduction"""

    def test_proof_weights(self):
        a, b = proof_weights(3, 2)
        result = verify_optimal_b_reduction(a, b)
        assert result["passed"] is True
        assert result["mismatches"] == []
        assert result["families_checked"] > 0

    def test_fractional_weights(self):
        a = WeightVector.of(["3/2", 1, "1/2"])
        b = WeightVector.of([0, "1/3", 0])
        assert verify_optimal_b_reduction(a, b)["passed"] is True

    def test_guard(self):
        with pytest.raises(SizeLimitError):
            verify_optimal_b_reduction(WeightVector.zeros(4), WeightVector.zeros(4))


def test_fraction_values_are_exact():
    a = WeightVector.of(["1/3", "1/3", "1/3"])
    verdict = max_weighted_pair(2, a, WeightVector.zeros(2))
    assert verdict.optimum == Fraction(2, 3)
