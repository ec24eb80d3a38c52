"""Tests for maximum intersecting subfamilies, star verdicts and the claw replays"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from intersecting_lab.exceptions import DomainError, SizeLimitError
from intersecting_lab.families.claw import ClawLayout, enumerate_itn
from intersecting_lab.families.sets import (
    Family,
    is_intersecting,
    k_subsets,
    power_set,
    relabel,
    star,
)
from intersecting_lab.search.extremal import (
    fjt_verdict,
    largest_star,
    lnk_verdict,
    max_intersecting,
    thm5_case1_bound,
    thm5_case2_bound,
)
from intersecting_lab.search.rng import SplitMix64, random_intersecting_subfamily
from intersecting_lab.search.symmetry import BlockSymmetry


def brute_force_optimum(family: Family) -> int:
    members = [bits for bits in family if bits]
    best = 0
    for choice in range(1 << len(members)):
        chosen = [m for i, m in enumerate(members) if choice >> i & 1]
        if len(chosen) > best and all(a & b for a in chosen for b in chosen):
            best = len(chosen)
    return best


class TestLargestStar:
    """Tests for largest_star"""

    def test_symmetric_family_ties_to_one(self):
        assert largest_star(k_subsets(5, 2)) == (1, 4)

    def test_claw_star_at_x1(self):
        element, size = largest_star(enumerate_itn(3, 3))
        assert ClawLayout(3).name(element) == "x1"
        assert size == 6

    def test_single_member(self):
        assert largest_star(Family.from_sets(3, [[2, 3]])) == (2, 1)

    def test_all_empty(self):
        with pytest.raises(DomainError):
            largest_star(Family(3, (0,)))
        with pytest.raises(DomainError):
            largest_star(Family.empty(3))


class TestMaxIntersecting:
    """Tests for the exact search"""

    def test_ekr_n6_r3(self):
        verdict = max_intersecting(k_subsets(6, 3))
        assert verdict.optimum == 10
        assert verdict.star_property == "holds"
        assert is_intersecting(verdict.witness)

    def test_witness_is_lexicographically_first(self):
        verdict = max_intersecting(k_subsets(4, 2))
        # in mask order the triangle {1,2}, {1,3}, {2,3} precedes every star
        assert verdict.witness.sets() == [(1, 2), (1, 3), (2, 3)]
        assert verdict.optimum == 3

    def test_itn_3_2(self):
        verdict = max_intersecting(enumerate_itn(3, 2))
        assert verdict.optimum == 5
        assert verdict.star_property == "holds"

    def test_itn_3_3_fails(self):
        verdict = max_intersecting(enumerate_itn(3, 3))
        assert verdict.optimum == 7
        assert verdict.largest_star_value == 6
        assert verdict.star_property == "fails"

    def test_power_set_ignores_empty_set(self):
        verdict = max_intersecting(power_set(3))
        assert verdict.optimum == 4
        assert 0 not in verdict.witness

    def test_only_empty_members(self):
        verdict = max_intersecting(Family(2, (0,)))
        assert verdict.optimum == 0
        assert verdict.star_element is None
        assert not verdict.witness

    def test_guard(self):
        with pytest.raises(SizeLimitError) as excinfo:
            max_intersecting(k_subsets(6, 3), max_members=10)
        assert excinfo.value.requested == 20

    def test_to_dict(self):
        document = max_intersecting(k_subsets(4, 2)).to_dict()
        assert document["optimum"] == 3
        assert document["largest_star"] == {"element": 1, "size": 3}
        assert document["witness"][0] == "n=4"
        assert document["seed"] is None
        assert "details" not in document

    @settings(max_examples=50, deadline=None)
    @given(
        st.integers(min_value=1, max_value=4).flatmap(
            lambda n: st.sets(st.integers(0, (1 << n) - 1), max_size=10).map(
                lambda masks: Family.from_masks(n, masks)
            )
        )
    )
    def test_matches_brute_force(self, family):
        verdict = max_intersecting(family)
        assert verdict.optimum == brute_force_optimum(family)
        assert is_intersecting(verdict.witness)
        assert verdict.witness.is_subfamily_of(family)

    def test_claw_symmetry_keeps_the_witness(self):
        family = enumerate_itn(4, 3)
        plain = max_intersecting(family)
        pruned = max_intersecting(family, symmetry=BlockSymmetry.claw_branches(ClawLayout(4)))
        assert pruned.witness == plain.witness
        assert pruned.optimum == 15

    def test_point_symmetry_keeps_the_witness(self):
        family = k_subsets(6, 2)
        plain = max_intersecting(family, symmetry=BlockSymmetry((tuple(range(1, 7)),)))
        pruned = max_intersecting(family, symmetry=BlockSymmetry.points(6))
        assert pruned.witness == plain.witness
        assert pruned.optimum == 5

    def test_symmetry_must_preserve_the_family(self):
        family = Family.from_sets(3, [[1], [1, 2], [1, 3]])
        with pytest.raises(DomainError, match="does not map"):
            max_intersecting(family, symmetry=BlockSymmetry.points(3))

    @settings(max_examples=30, deadline=None)
    @given(st.permutations([1, 2, 3, 4, 5]))
    def test_relabeling_invariance(self, permutation):
        family = Family.from_masks(5, list(k_subsets(5, 2))[:7] + list(k_subsets(5, 3))[::3])
        assert max_intersecting(relabel(family, permutation)).optimum == (
            max_intersecting(family).optimum
        )


class TestVerdicts:
    """Tests for fjt_verdict and lnk_verdict"""

    def test_fjt_holds_at_4_3(self):
        verdict = fjt_verdict(4, 3)
        assert verdict.star_property == "holds"
        assert verdict.optimum == 15
        assert verdict.annotations["star_at_x1"] is True
        assert verdict.annotations["star_vertex"] == "x1"

    def test_fjt_fails_at_3_3(self):
        verdict = fjt_verdict(3, 3)
        assert verdict.star_property == "fails"
        assert verdict.optimum == 7
        assert verdict.annotations["theorem_applies"] is False

    def test_fjt_trivial_r1(self):
        verdict = fjt_verdict(2, 1)
        assert verdict.star_property == "holds"
        assert verdict.optimum == 1

    def test_fjt_range(self):
        with pytest.raises(DomainError):
            fjt_verdict(3, 0)
        with pytest.raises(DomainError):
            fjt_verdict(3, 5)

    def test_lnk(self):
        verdict = lnk_verdict(3, 2, 2)
        assert verdict.optimum == 4
        assert verdict.annotations["expected_star_size"] == 4
        assert verdict.star_property == "holds"

    def test_lnk_range(self):
        with pytest.raises(DomainError):
            lnk_verdict(2, 2, 3)


class TestCase1Replay:
    """Tests for the n >= 2r - 2 replay"""

    def test_x1_star(self):
        layout = ClawLayout(4)
        family = star(enumerate_itn(4, 3), layout.x(1))
        report = thm5_case1_bound(4, 3, family)
        assert report.passed
        assert report.quantities["|E|"] == report.quantities["|F|"] == 15

    def test_random_samples(self):
        ambient = enumerate_itn(5, 3)
        rng = SplitMix64(11)
        for _ in range(20):
            family = random_intersecting_subfamily(ambient, rng)
            report = thm5_case1_bound(5, 3, family)
            assert report.passed, report.failures()

    def test_regime(self):
        with pytest.raises(DomainError):
            thm5_case1_bound(4, 4, Family.empty(9))
        with pytest.raises(DomainError):
            thm5_case1_bound(5, 4, Family.empty(11))

    def test_rejects_non_intersecting(self):
        layout = ClawLayout(3)
        family = Family.from_masks(
            7, [layout.x_bit(1) | layout.x_bit(2), layout.y_bit(1) | layout.y_bit(3)]
        )
        with pytest.raises(DomainError):
            thm5_case1_bound(3, 2, family)


class TestCase2Replay:
    """Tests for the n <= 2r - 3 replay"""

    def test_outside_conjecture_star(self):
        layout = ClawLayout(3)
        family = star(enumerate_itn(3, 3), layout.x(1))
        report = thm5_case2_bound(3, 3, family)
        assert report.passed
        assert report.flags["outside_conjecture"] is True
        assert report.quantities["|E|"] == 6
        assert report.quantities["|F|"] == 6

    def test_outside_conjecture_optimum_fails(self):
        ambient = enumerate_itn(3, 3)
        report = thm5_case2_bound(3, 3, max_intersecting(ambient).witness)
        assert not report.passed
        assert "|E| <= |F|" in report.failures()

    def test_random_samples_bounded(self):
        ambient = enumerate_itn(5, 4)
        rng = SplitMix64(5)
        for _ in range(10):
            family = random_intersecting_subfamily(ambient, rng)
            report = thm5_case2_bound(5, 4, family)
            assert report.passed, report.failures()
            assert len(family) <= 38
            assert report.flags["conditions_hold"] is True

    def test_proof_trace_attached(self):
        layout = ClawLayout(5)
        family = star(enumerate_itn(5, 4), layout.x(1))
        report = thm5_case2_bound(5, 4, family)
        assert report.proof_trace is not None
        assert report.proof_trace.passed
        assert report.to_dict()["proof_trace"]["passed"] is True

    def test_regime(self):
        with pytest.raises(DomainError):
            thm5_case2_bound(5, 3, Family.empty(11))
        with pytest.raises(DomainError):
            thm5_case2_bound(3, 4, Family.empty(7))

    def test_even_boundary_needs_the_option(self):
        layout = ClawLayout(4)
        family = star(enumerate_itn(4, 3), layout.x(1))
        with pytest.raises(DomainError, match="2r - 3"):
            thm5_case2_bound(4, 3, family)
        report = thm5_case2_bound(4, 3, family, allow_even_boundary=True)
        assert report.passed, report.failures()
        assert report.flags["even_boundary"] is True
        assert report.flags["conditions_hold"] is True
        assert report.quantities["|E|"] == report.quantities["|F|"] == 15

    def test_even_boundary_random_samples(self):
        ambient = enumerate_itn(6, 4)
        rng = SplitMix64(11)
        for _ in range(5):
            family = random_intersecting_subfamily(ambient, rng)
            report = thm5_case2_bound(6, 4, family, allow_even_boundary=True)
            assert report.passed, report.failures()

    def test_even_boundary_option_keeps_the_range(self):
        with pytest.raises(DomainError, match="2r - 2"):
            thm5_case2_bound(5, 3, Family.empty(11), allow_even_boundary=True)
