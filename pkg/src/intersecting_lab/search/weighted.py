"""
Weighted cross-intersecting pairs

Maximizes sum_{A in A} a_|A| + sum_{B in B} b_|B| over non-empty
cross-intersecting pairs (A, B) of families over [n] with A intersecting, and
replays the counting argument that bounds it by the value of the full star.
"""

import logging
from collections.abc import Iterator
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Literal

from ..exceptions import DomainError, SizeLimitError
from ..families.sets import (
    Family,
    are_cross_intersecting,
    binom,
    is_intersecting,
    power_set,
    slice_family,
    star,
)
from ..families.weights import (
    WeightVector,
    format_rational,
    star_rhs,
    thm2_condition_failures,
    weighted_sum,
)
from .rng import SplitMix64, random_cross_pair
from .verdict import SearchVerdict

logger = logging.getLogger(__name__)

MAX_EXHAUSTIVE_N = 4
MAX_SAMPLED_N = 12
MAX_REDUCTION_CHECK_N = 3
COLLECT_OPTIMA_N = 3

PairMode = Literal["exhaustive", "sampled"]


@dataclass(frozen=True)
class ProofTraceRow:
    """Counting bounds for one r with 1 <= r <= n/2."""

    r: int
    c_r: Fraction
    c_complement: Fraction
    a_r: int
    b_r_outside_a: int
    a_complement: int
    b_complement: int
    a_complement_bound: int
    b_complement_bound: int
    ekr_bound: int
    intermediate: Fraction
    combined: Fraction
    middle_bound: Fraction | None
    checks: dict[str, bool]

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> dict[str, Any]:
        return {
            "r": self.r,
            "c_r": format_rational(self.c_r),
            "c_n_minus_r": format_rational(self.c_complement),
            "|A^(r)|": self.a_r,
            "|B^(r) - A^(r)|": self.b_r_outside_a,
            "|A^(n-r)|": self.a_complement,
            "|B^(n-r)|": self.b_complement,
            "A^(n-r) bound": self.a_complement_bound,
            "B^(n-r) bound": self.b_complement_bound,
            "ekr_bound": self.ekr_bound,
            "intermediate": format_rational(self.intermediate),
            "combined": format_rational(self.combined),
            "middle_bound": (
                None if self.middle_bound is None else format_rational(self.middle_bound)
            ),
            "checks": dict(self.checks),
            "passed": self.passed,
        }


@dataclass
class ProofTrace:
    """Ledger of every inequality in the star bound for one pair (A, B)."""

    n: int
    c: tuple[Fraction, ...]
    rows: list[ProofTraceRow]
    total: Fraction
    telescoped: Fraction
    star_value: Fraction
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows) and all(self.checks.values())

    def failures(self) -> list[str]:
        failed = [name for name, ok in self.checks.items() if not ok]
        for row in self.rows:
            failed.extend(f"r={row.r}: {name}" for name, ok in row.checks.items() if not ok)
        return failed

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "c": [format_rational(value) for value in self.c],
            "rows": [row.to_dict() for row in self.rows],
            "total": format_rational(self.total),
            "telescoped": format_rational(self.telescoped),
            "star_rhs": format_rational(self.star_value),
            "checks": dict(self.checks),
            "passed": self.passed,
        }


def _layer_counts(family: Family, n: int) -> list[int]:
    counts = [0] * (n + 1)
    for bits in family.members:
        counts[bits.bit_count()] += 1
    return counts


def thm2_proof_trace(
    first: Family, second: Family, a: WeightVector, b: WeightVector
) -> ProofTrace:
    """
    Recompute c_i = |A^(i)| a_i + |B^(i)| b_i and check each counting step.

    For every 1 <= r <= n/2:
        |A^(n-r)| <= C(n, r) - |A^(r)| - |B^(r) - A^(r)|
        |B^(n-r)| <= C(n, r) - |A^(r)|
        |A^(r)| <= C(n-1, r-1)
        c_r + c_{n-r} <= intermediate <= combined
    plus c_{n/2} <= C(n-1, n/2-1)(a_{n/2} + b_{n/2}) for even n, c_0 = 0,
    c_n <= a_n + b_n, and the telescoped bound, which must equal star_rhs.

    Raises:
        DomainError: If A or B is empty, ground sizes differ, A is not
            intersecting or (A, B) is not cross-intersecting
    """
    n = first.ground_size
    if not first or not second:
        raise DomainError("Proof trace needs non-empty A and B")
    if second.ground_size != n or a.n != n or b.n != n:
        raise DomainError("Families and weights must share the ground size")
    if not is_intersecting(first):
        raise DomainError("A must be intersecting")
    if not are_cross_intersecting(first, second):
        raise DomainError("A and B must be cross-intersecting")

    a_counts = _layer_counts(first, n)
    b_counts = _layer_counts(second, n)
    c = tuple(a_counts[i] * a[i] + b_counts[i] * b[i] for i in range(n + 1))

    rows = []
    telescoped = a[n] + b[n]
    for r in range(1, n // 2 + 1):
        s = n - r
        a_layer = set(slice_family(first, r).members)
        b_outside = sum(1 for bits in slice_family(second, r).members if bits not in a_layer)
        a_bound = binom(n, r) - a_counts[r] - b_outside
        b_bound = binom(n, r) - a_counts[r]
        intermediate = (
            a_counts[r] * (a[r] + b[r] - a[s] - b[s])
            - b_outside * (a[s] - b[r])
            + binom(n, r) * (a[s] + b[s])
        )
        combined = binom(n - 1, r - 1) * (a[r] + b[r]) + binom(n - 1, s - 1) * (a[s] + b[s])
        pair_sum = c[r] + c[s]
        checks = {
            "A^(n-r) count": a_counts[s] <= a_bound,
            "B^(n-r) count": b_counts[s] <= b_bound,
            "EKR on A^(r)": a_counts[r] <= binom(n - 1, r - 1),
            "c_r + c_(n-r) <= intermediate": pair_sum <= intermediate,
            "intermediate <= combined": intermediate <= combined,
        }
        middle_bound = None
        if r == s:
            middle_bound = binom(n - 1, r - 1) * (a[r] + b[r])
            checks["middle c_(n/2)"] = c[r] <= middle_bound
            telescoped += middle_bound
        else:
            telescoped += combined
        rows.append(
            ProofTraceRow(
                r=r,
                c_r=c[r],
                c_complement=c[s],
                a_r=a_counts[r],
                b_r_outside_a=b_outside,
                a_complement=a_counts[s],
                b_complement=b_counts[s],
                a_complement_bound=a_bound,
                b_complement_bound=b_bound,
                ekr_bound=binom(n - 1, r - 1),
                intermediate=intermediate,
                combined=combined,
                middle_bound=middle_bound,
                checks=checks,
            )
        )

    total = sum(c, start=Fraction(0))
    rhs = star_rhs(a, b)
    trace = ProofTrace(
        n=n,
        c=c,
        rows=rows,
        total=total,
        telescoped=telescoped,
        star_value=rhs,
        checks={
            "c_0 = 0": c[0] == 0,
            "c_n <= a_n + b_n": c[n] <= a[n] + b[n],
            "total = weighted sums": total == weighted_sum(first, a) + weighted_sum(second, b),
            "total <= telescoped": total <= telescoped,
            "telescoped = star_rhs": telescoped == rhs,
        },
    )
    if not trace.passed:
        logger.error(f"Proof trace failed for n={n}: {trace.failures()}")
    return trace


def _validate_weights(n: int, a: WeightVector, b: WeightVector) -> None:
    if n < 1:
        raise DomainError("Weighted pairs need n >= 1")
    if a.n != n or b.n != n:
        raise DomainError(f"Weights must have n={n}, got {a.n} and {b.n}")
    failures = thm2_condition_failures(a, b)
    if failures:
        raise DomainError(f"Weights violate the hypothesis: {', '.join(failures)}")


class _PairSpace:
    """Non-empty subsets of [n] indexed by their mask, with meet bitsets."""

    def __init__(self, n: int, b: WeightVector):
        self.n = n
        self.size = 1 << n
        self.nonempty = ((1 << self.size) - 1) & ~1
        self.meets = [0] * self.size
        for s in range(1, self.size):
            for t in range(1, self.size):
                if s & t:
                    self.meets[s] |= 1 << t
        self.levels = [0] * (n + 1)
        for s in range(1, self.size):
            self.levels[s.bit_count()] |= 1 << s
        self.b = b

    def compatible_value(self, compatible: int) -> Fraction:
        return sum(
            ((compatible & level).bit_count() * self.b[i] for i, level in enumerate(self.levels)),
            start=Fraction(0),
        )

    def compatible_family(self, compatible: int) -> Family:
        return Family(self.n, tuple(s for s in range(1, self.size) if compatible >> s & 1))

    def walk(self, a: WeightVector) -> Iterator[tuple[tuple[int, ...], int, Fraction]]:
        """
        Every non-empty intersecting A in lexicographic order of member masks,
        with the bitset of sets meeting all of A and the a-weight of A.
        """
        chosen: list[int] = []

        def extend(last: int, compatible: int, a_value: Fraction) -> Iterator[Any]:
            for s in range(last + 1, self.size):
                if compatible >> s & 1:
                    chosen.append(s)
                    narrowed = compatible & self.meets[s]
                    value = a_value + a[s.bit_count()]
                    yield tuple(chosen), narrowed, value
                    yield from extend(s, narrowed, value)
                    chosen.pop()

        yield from extend(0, self.nonempty, Fraction(0))


def _star_pair(n: int) -> tuple[Family, Family]:
    full_star = star(power_set(n), 1)
    return full_star, full_star


def max_weighted_pair(
    n: int,
    a: WeightVector,
    b: WeightVector,
    mode: PairMode = "exhaustive",
    seed: int | None = None,
    trials: int = 10_000,
    trace: bool = False,
) -> SearchVerdict:
    """
    Maximum weighted value over valid pairs (A, B).

    exhaustive: every non-empty intersecting A, paired with the family of all
    non-empty sets meeting every member of A (the best B for that A when the
    weights are non-negative). All optima are collected for n <= 3.

    sampled: the star pair plus trials seeded random pairs; annotations record
    the best sampled value and how many samples exceeded star_rhs. With trace
    set, every sampled pair also runs thm2_proof_trace.

    Raises:
        DomainError: If n < 1, the weights disagree on n or fail the hypothesis
        SizeLimitError: If n exceeds the mode's guard
    """
    _validate_weights(n, a, b)
    rhs = star_rhs(a, b)

    if mode == "exhaustive":
        if n > MAX_EXHAUSTIVE_N:
            raise SizeLimitError(
                "Exhaustive weighted search too large", limit=MAX_EXHAUSTIVE_N, requested=n
            )
        space = _PairSpace(n, b)
        best_value: Fraction | None = None
        best: tuple[tuple[int, ...], int] = ((), 0)
        optima: list[tuple[tuple[int, ...], int]] = []
        nodes = 0
        for members, compatible, a_value in space.walk(a):
            nodes += 1
            value = a_value + space.compatible_value(compatible)
            if best_value is None or value > best_value:
                best_value, best = value, (members, compatible)
                optima = [best]
            elif value == best_value and n <= COLLECT_OPTIMA_N:
                optima.append((members, compatible))

        assert best_value is not None
        witness = (Family(n, best[0]), space.compatible_family(best[1]))
        verdict = SearchVerdict(
            optimum=best_value,
            witness=witness,
            largest_star_value=rhs,
            star_element=1,
            nodes_explored=nodes,
            annotations={"mode": mode, "n": n, "star_rhs": rhs},
        )
        if n <= COLLECT_OPTIMA_N:
            verdict.optima = [
                (Family(n, members), space.compatible_family(compatible))
                for members, compatible in optima
            ]
            star_members = _star_pair(n)[0].members
            verdict.annotations["star_pair_optimal"] = any(
                members == star_members for members, _ in optima
            )
        logger.info(f"max_weighted_pair exhaustive n={n}: optimum {best_value}, rhs {rhs}")
        return verdict

    if mode != "sampled":
        raise DomainError(f"Unknown mode {mode!r}")
    if n > MAX_SAMPLED_N:
        raise SizeLimitError("Sampled weighted search too large", limit=MAX_SAMPLED_N, requested=n)
    if seed is None:
        raise DomainError("Sampled mode needs a seed")

    rng = SplitMix64(seed)
    witness = _star_pair(n)
    best_value = weighted_sum(witness[0], a) + weighted_sum(witness[1], b)
    sample_max: Fraction | None = None
    exceeded = 0
    trace_failures = 0
    for _ in range(trials):
        first, second = random_cross_pair(n, rng)
        value = weighted_sum(first, a) + weighted_sum(second, b)
        if value > rhs:
            exceeded += 1
        if sample_max is None or value > sample_max:
            sample_max = value
        if value > best_value:
            best_value, witness = value, (first, second)
        if trace and not thm2_proof_trace(first, second, a, b).passed:
            trace_failures += 1

    annotations: dict[str, Any] = {
        "mode": mode,
        "n": n,
        "trials": trials,
        "star_rhs": rhs,
        "sample_max": sample_max,
        "exceeded": exceeded,
    }
    if trace:
        annotations["trace_failures"] = trace_failures
    logger.info(
        f"max_weighted_pair sampled n={n} trials={trials}: best {best_value}, "
        f"exceeded {exceeded}"
    )
    return SearchVerdict(
        optimum=best_value,
        witness=witness,
        largest_star_value=rhs,
        star_element=1,
        nodes_explored=trials,
        seed=seed,
        annotations=annotations,
    )


def verify_optimal_b_reduction(a: WeightVector, b: WeightVector) -> dict[str, Any]:
    """
    Brute-force check that, for each intersecting A, no cross-intersecting B
    beats the family of all non-empty sets meeting every member of A.

    Raises:
        SizeLimitError: If n > 3
    """
    n = a.n
    _validate_weights(n, a, b)
    if n > MAX_REDUCTION_CHECK_N:
        raise SizeLimitError(
            "Brute-force B reduction check too large", limit=MAX_REDUCTION_CHECK_N, requested=n
        )

    space = _PairSpace(n, b)
    sets = list(range(1, space.size))
    checked = 0
    mismatches = []
    for members, compatible, _ in space.walk(a):
        checked += 1
        reduced = space.compatible_value(compatible)
        brute = Fraction(0)
        for choice in range(1, 1 << len(sets)):
            chosen = [s for index, s in enumerate(sets) if choice >> index & 1]
            if all(s & m for s in chosen for m in members):
                brute = max(brute, sum((b[s.bit_count()] for s in chosen), start=Fraction(0)))
        if brute != reduced:
            mismatches.append({"A": list(members), "reduced": str(reduced), "brute": str(brute)})

    logger.info(f"B reduction check n={n}: {checked} families, {len(mismatches)} mismatches")
    return {
        "n": n,
        "families_checked": checked,
        "mismatches": mismatches,
        "passed": not mismatches,
    }
