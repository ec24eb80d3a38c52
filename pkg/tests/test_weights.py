"""Tests for rational weight vectors"""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from intersecting_lab.exceptions import DomainError
from intersecting_lab.families.sets import Family, power_set, star
from intersecting_lab.families.weights import (
    WeightVector,
    check_thm2_conditions,
    format_rational,
    proof_weights,
    random_valid_weights,
    star_rhs,
    star_rhs_parts,
    thm2_condition_failures,
    to_fraction,
    weighted_sum,
)
from intersecting_lab.search.rng import SplitMix64


class TestWeightVector:
    """Tests for WeightVector construction"""

    def test_of_accepts_strings_and_fractions(self):
        weights = WeightVector.of(["1/2", 3, Fraction(2, 3)])
        assert weights.n == 2
        assert weights.values == (Fraction(1, 2), Fraction(3), Fraction(2, 3))
        assert weights.as_strings() == ["1/2", "3", "2/3"]

    def test_rejects_floats(self):
        with pytest.raises(DomainError):
            to_fraction(0.5)

    def test_rejects_garbage(self):
        with pytest.raises(DomainError):
            to_fraction("one half")
        with pytest.raises(DomainError):
            to_fraction("1/0")

    def test_rejects_negative(self):
        with pytest.raises(DomainError):
            WeightVector.of([1, -1])

    def test_length_mismatch(self):
        with pytest.raises(DomainError):
            WeightVector(3, (1, 2))

    def test_scaled_and_zeros(self):
        assert WeightVector.of([1, 2]).scaled("1/2").values == (Fraction(1, 2), Fraction(1))
        assert WeightVector.zeros(2).values == (0, 0, 0)
        with pytest.raises(DomainError):
            WeightVector.of([1]).scaled(0)

    def test_format_rational(self):
        assert format_rational(Fraction(4, 2)) == 2
        assert format_rational(Fraction(3, 6)) == "1/2"


class TestConditions:
    """Tests for the weighted cross-intersecting hypothesis"""

    def test_ekr_specialization(self):
        assert check_thm2_conditions(WeightVector.of([1] * 6), WeightVector.zeros(5))

    def test_all_zero(self):
        assert check_thm2_conditions(WeightVector.zeros(4), WeightVector.zeros(4))

    def test_n4_example(self):
        a = WeightVector.of([4, 3, 2, 1, 0])
        b = WeightVector.of([0, 0, 1, 0, 0])
        assert check_thm2_conditions(a, b)

    def test_failures_name_the_inequality(self):
        a = WeightVector.of([0, 0, 5])
        b = WeightVector.of([1, 0, 0])
        assert thm2_condition_failures(a, b) == ["a_0 + b_0 >= a_2 + b_2"]

    def test_mismatched_n(self):
        with pytest.raises(DomainError):
            check_thm2_conditions(WeightVector.zeros(2), WeightVector.zeros(3))

    @given(st.integers(min_value=1, max_value=8), st.integers(min_value=0, max_value=2**64 - 1))
    def test_random_valid_weights_satisfy_hypothesis(self, n, seed):
        a, b = random_valid_weights(n, SplitMix64(seed))
        assert a.n == b.n == n
        assert thm2_condition_failures(a, b) == []


class TestSums:
    """Tests for weighted_sum, star_rhs and proof_weights"""

    def test_weighted_sum(self):
        assert weighted_sum(Family.empty(3), WeightVector.of([1, 1, 1, 1])) == 0
        assert weighted_sum(power_set(2), WeightVector.of([1, 1, 1])) == 4
        assert weighted_sum(star(power_set(3), 1), WeightVector.of([0, 1, 2, 3])) == 8

    def test_weighted_sum_mismatch(self):
        with pytest.raises(DomainError):
            weighted_sum(power_set(2), WeightVector.of([1, 1, 1, 1]))

    def test_star_rhs(self):
        assert star_rhs(WeightVector.of([3, 2, 1, 0]), WeightVector.of([0, 1, 0, 0])) == 5
        assert star_rhs(WeightVector.zeros(3), WeightVector.zeros(3)) == 0
        assert star_rhs(WeightVector.of([1, 1, 1]), WeightVector.zeros(2)) == 2

    def test_star_rhs_parts(self):
        a, b = proof_weights(3, 2)
        assert star_rhs_parts(a, b) == (4, 1)

    def test_proof_weights(self):
        a, b = proof_weights(4, 3)
        assert a.values == (4, 3, 2, 1, 0)
        assert b.values == (0, 0, 1, 0, 0)
        a, b = proof_weights(3, 2)
        assert a.values == (3, 2, 1, 0)
        assert b.values == (0, 1, 0, 0)

    def test_proof_weights_range(self):
        with pytest.raises(DomainError):
            proof_weights(3, 3)
        with pytest.raises(DomainError):
            proof_weights(4, 1)

    @pytest.mark.parametrize("n, r", [(4, 2), (5, 2), (6, 3), (8, 4), (10, 5)])
    def test_proof_weights_rejects_n_at_least_2r(self, n, r):
        with pytest.raises(DomainError, match="n <= 2r - 1"):
            proof_weights(n, r)

    def test_proof_weights_meet_hypothesis_in_range(self):
        pairs = [(n, r) for n in range(3, 11) for r in range(2, n) if n <= 2 * r - 1]
        assert (5, 3) in pairs and (10, 9) in pairs
        for n, r in pairs:
            a, b = proof_weights(n, r)
            assert check_thm2_conditions(a, b), (n, r, thm2_condition_failures(a, b))
