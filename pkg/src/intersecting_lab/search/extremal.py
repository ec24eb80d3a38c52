"""
Maximum intersecting subfamilies and star-property verdicts

The maximum intersecting subfamily of F is a maximum clique of the graph on
the non-empty members of F in which two members are adjacent when they
intersect. The largest star is always feasible, so its size seeds the search.
"""

import logging
from dataclasses import dataclass, field
from typing import Any

from ..exceptions import DomainError, SizeLimitError
from ..families.claw import (
    ClawLayout,
    enumerate_itn,
    gamma_compress,
    split_x0,
    x1_star_size,
)
from ..families.labeled import (
    LabeledUniverse,
    enumerate_lnk,
    full_compress,
    meets_x_layer_pairwise,
    trace_xn,
    x_trace,
)
from ..families.sets import (
    Family,
    are_cross_intersecting,
    binom,
    elements_of,
    is_intersecting,
    meeting_members,
    member_incidence,
    star,
)
from ..families.weights import (
    _fibre_weights,
    check_thm2_conditions,
    proof_weights,
    star_rhs,
    star_rhs_parts,
    weighted_sum,
)
from ..reports import to_jsonable
from .clique import max_clique
from .symmetry import BlockSymmetry, FamilyOrbits
from .verdict import SearchVerdict
from .weighted import ProofTrace, thm2_proof_trace

logger = logging.getLogger(__name__)

MAX_MEMBERS = 5000


def largest_star(family: Family) -> tuple[int, int]:
    """
    The element whose star is largest (smallest element on ties) and that size.

    Raises:
        DomainError: If F is empty or every member is empty
    """
    if not family.members or not family.union_bits:
        raise DomainError("largest_star needs a family with a non-empty member")
    incidence = member_incidence(family)
    best_element, best_size = 0, -1
    for index, members in enumerate(incidence):
        size = members.bit_count()
        if size > best_size:
            best_element, best_size = index + 1, size
    return best_element, best_size


def _orbit_oracle(family: Family, symmetry: BlockSymmetry | None) -> FamilyOrbits | None:
    if symmetry is None:
        if family.ground_size < 2:
            return None
        symmetry = BlockSymmetry.points(family.ground_size)
        if not symmetry.preserves(family):
            return None
    elif not symmetry.preserves(family):
        raise DomainError(f"Block symmetry {symmetry.blocks} does not map the family onto itself")
    return FamilyOrbits(symmetry, family.members, family.ground_size)


def max_intersecting(
    family: Family,
    max_members: int = MAX_MEMBERS,
    symmetry: BlockSymmetry | None = None,
) -> SearchVerdict:
    """
    Exact maximum intersecting subfamily.

    The witness is the lexicographically first optimum under canonical member
    order. Block permutations that map F onto itself prune the search; when
    none are given, all permutations of the ground set are tried.

    Raises:
        SizeLimitError: If F has more than max_members members
        DomainError: If the given symmetry does not map F onto itself
    """
    if len(family) > max_members:
        raise SizeLimitError(
            "Family too large for exact search", limit=max_members, requested=len(family)
        )
    if not family.union_bits:
        return SearchVerdict(
            optimum=0,
            witness=Family.empty(family.ground_size),
            largest_star_value=0,
            star_element=None,
        )

    element, star_size = largest_star(family)
    members = family.members
    incidence = member_incidence(family)
    adjacency = [
        meeting_members(incidence, bits) & ~(1 << index) for index, bits in enumerate(members)
    ]
    candidates = 0
    for index, bits in enumerate(members):
        if bits:
            candidates |= 1 << index

    logger.info(
        f"max_intersecting: {len(family)} members over [{family.ground_size}], "
        f"largest star {star_size} at {element}"
    )
    stars = [elements_of(members_with) for members_with in incidence]
    result = max_clique(
        adjacency,
        candidates,
        floor=star_size,
        symmetry=_orbit_oracle(family, symmetry),
        hints=[[index - 1 for index in indices] for indices in stars],
    )
    witness = Family(family.ground_size, tuple(members[i] for i in result.vertices))
    logger.info(f"max_intersecting: optimum {len(witness)} after {result.nodes} nodes")

    return SearchVerdict(
        optimum=len(witness),
        witness=witness,
        largest_star_value=star_size,
        star_element=element,
        nodes_explored=result.nodes,
    )


def fjt_verdict(n: int, r: int, max_members: int = MAX_MEMBERS) -> SearchVerdict:
    """
    Star-property verdict for I_{T_n}^(r).

    Records the x_1 star size and whether the x_1 star attains the optimum.

    Raises:
        DomainError: Unless 1 <= r <= n + 1
    """
    if not 1 <= r <= n + 1:
        raise DomainError(f"fjt_verdict needs 1 <= r <= n + 1, got n={n} r={r}")
    layout = ClawLayout(n)
    family = enumerate_itn(n, r)
    verdict = max_intersecting(
        family, max_members=max_members, symmetry=BlockSymmetry.claw_branches(layout)
    )
    x1_size = len(star(family, layout.x(1)))
    verdict.annotations = {
        "n": n,
        "r": r,
        "family_size": len(family),
        "x1_star_size": x1_star_size(n, r),
        "star_at_x1": x1_size == verdict.optimum,
        "star_vertex": layout.name(verdict.star_element) if verdict.star_element else None,
        "theorem_applies": r <= n - 1 or r <= 1,
    }
    return verdict


def lnk_verdict(n: int, k: int, r: int, max_members: int = MAX_MEMBERS) -> SearchVerdict:
    """Star-property verdict for L_{n,k}^(r); a star has C(n-1, r-1) k^(r-1) members."""
    universe = LabeledUniverse(n, k)
    if not 1 <= r <= n:
        raise DomainError(f"lnk_verdict needs 1 <= r <= n, got n={n} r={r}")
    verdict = max_intersecting(
        enumerate_lnk(universe, r),
        max_members=max_members,
        symmetry=BlockSymmetry.labeled_indices(universe),
    )
    verdict.annotations = {
        "n": n,
        "k": k,
        "r": r,
        "expected_star_size": binom(n - 1, r - 1) * k ** (r - 1),
    }
    return verdict


@dataclass
class PipelineReport:
    """Every intermediate quantity and check of one replayed proof case."""

    case: str
    n: int
    r: int
    quantities: dict[str, Any]
    checks: dict[str, bool]
    flags: dict[str, bool] = field(default_factory=dict)
    proof_trace: ProofTrace | None = None

    @property
    def passed(self) -> bool:
        trace_ok = self.proof_trace is None or self.proof_trace.passed
        return all(self.checks.values()) and trace_ok

    def failures(self) -> list[str]:
        failed = [name for name, ok in self.checks.items() if not ok]
        if self.proof_trace is not None:
            failed.extend(f"trace {name}" for name in self.proof_trace.failures())
        return failed

    def to_dict(self) -> dict[str, Any]:
        return {
            "case": self.case,
            "n": self.n,
            "r": self.r,
            "quantities": to_jsonable(self.quantities),
            "checks": dict(self.checks),
            "flags": dict(self.flags),
            "proof_trace": None if self.proof_trace is None else self.proof_trace.to_dict(),
            "passed": self.passed,
        }


def _check_claw_subfamily(n: int, r: int, family: Family) -> tuple[ClawLayout, Family]:
    layout = ClawLayout(n)
    ambient = enumerate_itn(n, r)
    if not family.is_subfamily_of(ambient):
        raise DomainError(f"E is not a subfamily of I_(T_{n})^({r})")
    if not is_intersecting(family):
        raise DomainError("E must be intersecting")
    return layout, ambient


def thm5_case1_bound(n: int, r: int, family: Family) -> PipelineReport:
    """
    Replay the n >= 2r - 2 case: Gamma-compress E, split at x_0, and check
    that both parts are intersecting and within their star bounds.

    Raises:
        DomainError: Outside 2 <= r <= n - 1 with n >= 2r - 2, or if E is not
            an intersecting subfamily of I_{T_n}^(r)
    """
    if not (2 <= r <= n - 1 and n >= 2 * r - 2):
        raise DomainError(f"Case 1 needs 2 <= r <= n - 1 and n >= 2r - 2, got n={n} r={r}")
    layout, ambient = _check_claw_subfamily(n, r, family)

    compressed = gamma_compress(layout, family)
    g0, g1, g1_prime = split_x0(layout, compressed)
    f1_prime_size = binom(n - 1, r - 2)
    f0_size = binom(n - 1, r - 1) * 2 ** (r - 1)
    bound = x1_star_size(n, r)

    report = PipelineReport(
        case="case1",
        n=n,
        r=r,
        quantities={
            "|E|": len(family),
            "|G|": len(compressed),
            "|G_0|": len(g0),
            "|G_1|": len(g1),
            "|G_1'|": len(g1_prime),
            "|F_0|": f0_size,
            "|F_1'|": f1_prime_size,
            "|F|": bound,
        },
        checks={
            "gamma preserves size": len(compressed) == len(family),
            "gamma stays in R": compressed.is_subfamily_of(ambient),
            "G_0 intersecting": is_intersecting(g0),
            "G_1' intersecting": is_intersecting(g1_prime),
            "|G_1'| <= |F_1'|": len(g1_prime) <= f1_prime_size,
            "|G_0| <= |F_0|": len(g0) <= f0_size,
            "|E| <= |F|": len(family) <= bound,
        },
    )
    if not report.passed:
        logger.error(f"Case 1 replay failed for n={n} r={r}: {report.failures()}")
    return report


def thm5_case2_bound(
    n: int, r: int, family: Family, allow_even_boundary: bool = False
) -> PipelineReport:
    """
    Replay the n <= 2r - 3 case on E.

    Pipeline: split E at x_0, compress E_0 inside L_{n,2}, check that the
    compressed sets pairwise meet in X_n and meet every set of E_1', form the
    trace family A and B = E_1', weigh them with a_i = C(n-i, r-i) and
    b_{r-1} = 1, and confirm |E| <= |F| with F the x_1 star.

    r = n is accepted and flagged outside_conjecture: the weights are built
    the same way, their hypothesis is reported rather than required, and the
    final bound is expected to fail for the largest families.

    With allow_even_boundary the same pipeline also runs at n = 2r - 2, where
    the weights still satisfy their hypothesis; the report is flagged
    even_boundary.

    Raises:
        DomainError: Outside 2 <= r <= n with n <= 2r - 3 (n <= 2r - 2 with
            allow_even_boundary), or if E is not an intersecting subfamily
            of I_{T_n}^(r)
    """
    limit = 2 * r - 2 if allow_even_boundary else 2 * r - 3
    if not (2 <= r <= n and n <= limit):
        raise DomainError(
            f"Case 2 needs 2 <= r <= n and n <= {'2r - 2' if allow_even_boundary else '2r - 3'}, "
            f"got n={n} r={r}"
        )
    outside_conjecture = r == n
    even_boundary = n == 2 * r - 2
    layout, _ = _check_claw_subfamily(n, r, family)
    universe = layout.labeled_universe()

    e0, e1, e1_prime = split_x0(layout, family)
    e0_compressed = full_compress(universe, layout.to_labeled_family(e0))

    traces = [x_trace(universe, bits) for bits in e0_compressed.members]
    fibres: dict[int, int] = {}
    for trace in traces:
        fibres[trace] = fibres.get(trace, 0) + 1

    first = trace_xn(universe, e0_compressed)
    second = e1_prime
    a, b = _fibre_weights(n, r) if outside_conjecture else proof_weights(n, r)
    a_value = weighted_sum(first, a)
    b_value = weighted_sum(second, b)
    rhs = star_rhs(a, b)
    a_part, b_part = star_rhs_parts(a, b)
    f0_size = binom(n - 1, r - 1) * 2 ** (r - 1)
    f1_size = binom(n - 1, r - 2)
    bound = x1_star_size(n, r)
    conditions = check_thm2_conditions(a, b)

    checks = {
        "|E_0'| = |E_0|": len(e0_compressed) == len(e0),
        "E n F n X_n nonempty on E_0'": meets_x_layer_pairwise(universe, e0_compressed),
        "E n F n X_n nonempty across E_0', E_1'": all(
            t & f for t in traces for f in second.members
        ),
        "A intersecting": is_intersecting(first),
        "A, B cross-intersecting": are_cross_intersecting(first, second),
        "fibres within a_|T|": all(
            count <= a[trace.bit_count()] for trace, count in fibres.items()
        ),
        "|E_0| <= sum a": len(e0) <= a_value,
        "|E_1| = sum b": len(e1) == b_value,
        "weighted total <= star rhs": a_value + b_value <= rhs,
        "|F_0| = star a-part": f0_size == a_part,
        "|F_1| = star b-part": f1_size == b_part,
        "|E| <= |F|": len(family) <= bound,
    }
    if not outside_conjecture:
        checks["weights satisfy hypothesis"] = conditions

    proof_trace = None
    if (
        first
        and second
        and conditions
        and checks["A intersecting"]
        and checks["A, B cross-intersecting"]
    ):
        proof_trace = thm2_proof_trace(first, second, a, b)

    report = PipelineReport(
        case="case2",
        n=n,
        r=r,
        quantities={
            "|E|": len(family),
            "|E_0|": len(e0),
            "|E_1|": len(e1),
            "|A|": len(first),
            "|B|": len(second),
            "a": list(a.values),
            "b": list(b.values),
            "sum a over A": a_value,
            "sum b over B": b_value,
            "star_rhs": rhs,
            "|F_0|": f0_size,
            "|F_1|": f1_size,
            "|F|": bound,
        },
        checks=checks,
        flags={
            "outside_conjecture": outside_conjecture,
            "even_boundary": even_boundary,
            "conditions_hold": conditions,
        },
        proof_trace=proof_trace,
    )
    if not report.passed and not outside_conjecture:
        logger.error(f"Case 2 replay failed for n={n} r={r}: {report.failures()}")
    return report
