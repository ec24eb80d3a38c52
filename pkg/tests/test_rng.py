"""Tests for the SplitMix64 generator and the seeded samplers"""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from intersecting_lab.exceptions import DomainError
from intersecting_lab.families.claw import enumerate_itn
from intersecting_lab.families.sets import (
    Family,
    are_cross_intersecting,
    is_intersecting,
    k_subsets,
)
from intersecting_lab.search.rng import SplitMix64, random_cross_pair, random_intersecting_subfamily

seeds = st.integers(min_value=0, max_value=2**64 - 1)


class TestSplitMix64:
    """Tests for the generator contract"""

    def test_reference_sequence(self):
        rng = SplitMix64(1234567)
        assert [rng.next_u64() for _ in range(5)] == [
            6457827717110365317,
            3203168211198807973,
            9817491932198370423,
            4593380528125082431,
            16408922859458223821,
        ]

    def test_seed_zero(self):
        assert SplitMix64(0).next_u64() == 0xE220A8397B1DCDAF

    def test_below_range(self):
        rng = SplitMix64(7)
        draws = [rng.below(3) for _ in range(300)]
        assert set(draws) == {0, 1, 2}

    def test_below_rejects_non_positive(self):
        with pytest.raises(DomainError):
            SplitMix64(1).below(0)

    def test_shuffle_is_deterministic(self):
        first, second = list(range(10)), list(range(10))
        SplitMix64(42).shuffle(first)
        SplitMix64(42).shuffle(second)
        assert first == second
        assert sorted(first) == list(range(10))

    def test_spawn_is_independent_of_parent_continuation(self):
        parent = SplitMix64(99)
        child = parent.spawn()
        assert child.seed != parent.seed
        assert child.next_u64() != parent.next_u64()

    def test_fraction_bounds(self):
        rng = SplitMix64(5)
        for _ in range(100):
            value = rng.fraction(9, 6)
            assert 0 <= value <= 9


class TestSamplers:
    """Tests for the random family samplers"""

    @given(seeds)
    def test_intersecting_subfamily(self, seed):
        ambient = k_subsets(5, 2)
        family = random_intersecting_subfamily(ambient, SplitMix64(seed))
        assert family
        assert family.is_subfamily_of(ambient)
        assert is_intersecting(family)

    def test_same_seed_same_family(self):
        ambient = enumerate_itn(4, 3)
        first = random_intersecting_subfamily(ambient, SplitMix64(2024))
        second = random_intersecting_subfamily(ambient, SplitMix64(2024))
        assert first == second

    def test_only_empty_members(self):
        family = random_intersecting_subfamily(Family(3, (0,)), SplitMix64(1))
        assert family == Family.empty(3)

    @given(st.integers(min_value=1, max_value=5), seeds)
    def test_cross_pair(self, n, seed):
        first, second = random_cross_pair(n, SplitMix64(seed))
        assert first and second
        assert is_intersecting(first)
        assert are_cross_intersecting(first, second)
        assert 0 not in second

    def test_cross_pair_needs_ground_set(self):
        with pytest.raises(DomainError):
            random_cross_pair(0, SplitMix64(1))
