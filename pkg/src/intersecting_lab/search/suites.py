"""
Theorem suites

Each suite re-checks one family of claims on every instance in its range and
records one row per instance. A row that does not hold raises
FalsifiedClaimError carrying the offending instance; run_suite turns it into
a failed SuiteResult so the report still shows every row checked so far.
"""

import logging
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any

from ..exceptions import DomainError, FalsifiedClaimError, UsageError
from ..families.claw import (
    ClawLayout,
    build_tn,
    enumerate_itn,
    gamma,
    gamma_compress,
    independent_sets,
    itn_size,
    split_x0,
)
from ..families.labeled import (
    LabeledUniverse,
    enumerate_lnk,
    full_compress,
    meets_x_layer_pairwise,
)
from ..families.sets import (
    Family,
    binom,
    elements_of,
    intersecting_subfamilies,
    is_intersecting,
    k_subsets,
    star,
)
from ..families.weights import proof_weights, random_valid_weights
from ..reports import family_document, to_jsonable
from .extremal import (
    MAX_MEMBERS,
    PipelineReport,
    fjt_verdict,
    lnk_verdict,
    max_intersecting,
    thm5_case1_bound,
    thm5_case2_bound,
)
from .rng import SplitMix64, random_cross_pair, random_intersecting_subfamily
from .symmetry import BlockSymmetry
from .weighted import max_weighted_pair, thm2_proof_trace, verify_optimal_b_reduction

logger = logging.getLogger(__name__)

DEFAULT_SEED = 20240601
DEFAULT_TRIALS = 10_000
DEFAULT_SAMPLES = 200
RANDOM_WEIGHT_PAIRS_N3 = 50
RANDOM_WEIGHT_PAIRS_N4 = 3
LEMMA6_CASES = ((3, 2, 2), (4, 2, 3), (3, 3, 2))
LEMMA6_EXHAUSTIVE_SIZE = 4
LNK_CASES = ((2, 2, 2), (3, 2, 2), (3, 2, 3), (3, 3, 2), (3, 3, 3), (4, 2, 2), (4, 2, 3))
CASE2_RANGE = ((5, 4), (6, 5), (7, 6))
CASE2_EVEN_BOUNDARY = ((4, 3), (6, 4))
OUTSIDE_CONJECTURE = ((3, 3), (4, 4))
OPTIMUM_SAMPLE_MAX = 120


@dataclass
class SuiteOptions:
    """Knobs shared by every suite; n_max None means the suite's own default."""

    n_max: int | None = None
    seed: int = DEFAULT_SEED
    trials: int = DEFAULT_TRIALS
    samples: int = DEFAULT_SAMPLES
    max_members: int = MAX_MEMBERS


@dataclass
class SuiteResult:
    """Rows checked by one suite run, and the falsification if one occurred."""

    suite: str
    module: str
    invariant: str
    columns: list[str]
    n_max: int
    seed: int
    rows: list[list[Any]] = field(default_factory=list)
    failure: FalsifiedClaimError | None = None

    @property
    def passed(self) -> bool:
        return self.failure is None

    def record(self, row: list[Any], holds: bool, message: str = "", witness: Any = None) -> None:
        """Append a row (its holds flag last) and raise when it does not hold."""
        self.rows.append([*row, holds])
        logger.debug(f"suite {self.suite}: {row} holds={holds}")
        if not holds:
            raise FalsifiedClaimError(self.suite, message or f"row {row} fails", witness)

    def to_dict(self) -> dict[str, Any]:
        document: dict[str, Any] = {
            "suite": self.suite,
            "module": self.module,
            "invariant": self.invariant,
            "n_max": self.n_max,
            "seed": self.seed,
            "columns": list(self.columns),
            "rows": [dict(zip(self.columns, to_jsonable(row))) for row in self.rows],
            "passed": self.passed,
        }
        if self.failure is not None:
            document["failure"] = {
                "message": self.failure.message,
                "witness": to_jsonable(self.failure.witness),
            }
        return document


@dataclass(frozen=True)
class Suite:
    name: str
    module: str
    invariant: str
    columns: tuple[str, ...]
    default_n_max: int
    runner: Callable[[SuiteResult, SuiteOptions, int], None]


def _ekr(result: SuiteResult, options: SuiteOptions, n_max: int) -> None:
    for n in range(1, n_max + 1):
        for r in range(1, n // 2 + 1):
            verdict = max_intersecting(
                k_subsets(n, r),
                max_members=options.max_members,
                symmetry=BlockSymmetry.points(n),
            )
            expected = binom(n - 1, r - 1)
            result.record(
                [n, r, verdict.optimum, expected],
                verdict.optimum == expected,
                f"max intersecting subfamily of ([{n}] choose {r}) has {verdict.optimum} members",
                verdict.witness,
            )


def _pair_witness(first: Family, second: Family) -> dict[str, list[str]]:
    return {"A": family_document(first), "B": family_document(second)}


def _thm2(result: SuiteResult, options: SuiteOptions, n_max: int) -> None:
    rng = SplitMix64(options.seed)

    a, b = proof_weights(3, 2)
    reduction = verify_optimal_b_reduction(a, b)
    result.record(
        [3, "reduction", "proof_weights(3,2)", reduction["families_checked"], None],
        reduction["passed"],
        "a cross-intersecting B beats the full compatible family",
        reduction["mismatches"],
    )

    corpus = {3: [("proof_weights(3,2)", a, b)]}
    weight_rng = rng.spawn()
    for index in range(RANDOM_WEIGHT_PAIRS_N3):
        corpus[3].append((f"random #{index}", *random_valid_weights(3, weight_rng)))
    if n_max >= 4:
        corpus[4] = [
            ("proof_weights(4,3)", *proof_weights(4, 3)),
        ]
        for index in range(RANDOM_WEIGHT_PAIRS_N4):
            corpus[4].append((f"random #{index}", *random_valid_weights(4, weight_rng)))

    for n, weights in corpus.items():
        for label, a, b in weights:
            verdict = max_weighted_pair(n, a, b, mode="exhaustive")
            holds = verdict.optimum == verdict.largest_star_value
            if n == 3:
                holds = holds and verdict.annotations["star_pair_optimal"]
            result.record(
                [n, "exhaustive", label, verdict.optimum, verdict.largest_star_value],
                holds,
                f"exhaustive optimum {verdict.optimum} differs from star_rhs for {label}",
                {"a": a.as_strings(), "b": b.as_strings(), "verdict": verdict.to_dict()},
            )

    for n in (4, 5):
        if n > n_max:
            break
        pair_rng = rng.spawn()
        worst = None
        for _ in range(options.trials):
            a, b = random_valid_weights(n, pair_rng)
            first, second = random_cross_pair(n, pair_rng)
            trace = thm2_proof_trace(first, second, a, b)
            slack = trace.star_value - trace.total
            if worst is None or slack < worst:
                worst = slack
            if slack < 0 or not trace.passed:
                result.record(
                    [n, "sampled", "random pair", trace.total, trace.star_value],
                    False,
                    f"sampled pair violates the star bound: {trace.failures()}",
                    {
                        "a": a.as_strings(),
                        "b": b.as_strings(),
                        "pair": _pair_witness(first, second),
                    },
                )
        label = f"{options.trials} random pairs, min slack"
        result.record([n, "sampled", label, worst, None], True)

        a, b = proof_weights(n, n - 1)
        verdict = max_weighted_pair(
            n, a, b, mode="sampled", seed=pair_rng.next_u64(), trials=options.trials, trace=True
        )
        details = verdict.annotations
        result.record(
            [n, "sampled", f"proof_weights({n},{n - 1})", verdict.optimum, details["star_rhs"]],
            details["exceeded"] == 0
            and details["trace_failures"] == 0
            and verdict.optimum == details["star_rhs"],
            "sampled pair beats the star pair",
            verdict.to_dict(),
        )


def _fjt(result: SuiteResult, options: SuiteOptions, n_max: int) -> None:
    for n in range(2, n_max + 1):
        rs = list(range(2, n))
        if n in (3, 4):
            rs.append(n)
        for r in rs:
            verdict = fjt_verdict(n, r, max_members=options.max_members)
            details = verdict.annotations
            expected = "holds" if r <= n - 1 else "fails"
            holds = verdict.star_property == expected
            if expected == "holds":
                holds = holds and verdict.optimum == details["x1_star_size"]
            result.record(
                [
                    n,
                    r,
                    verdict.optimum,
                    details["x1_star_size"],
                    verdict.largest_star_value,
                    verdict.star_property,
                    expected,
                ],
                holds,
                f"I_(T_{n})^({r}) star property {verdict.star_property}, expected {expected}",
                verdict.witness,
            )


def _compression_holds(universe: LabeledUniverse, family: Family) -> bool:
    compressed = full_compress(universe, family)
    return (
        len(compressed) == len(family)
        and is_intersecting(compressed)
        and meets_x_layer_pairwise(universe, compressed)
        and full_compress(universe, compressed) == compressed
    )


def _lemma6(result: SuiteResult, options: SuiteOptions, n_max: int) -> None:
    rng = SplitMix64(options.seed)
    for n, k, r in LEMMA6_CASES:
        if n > n_max:
            continue
        universe = LabeledUniverse(n, k)
        ambient = enumerate_lnk(universe, r)
        message = f"composed compression breaks the X_n meeting property on L_({n},{k})^({r})"

        checked = 0
        for family in intersecting_subfamilies(ambient, LEMMA6_EXHAUSTIVE_SIZE):
            checked += 1
            if not _compression_holds(universe, family):
                result.record(
                    [n, k, r, "exhaustive", checked], False, message, family_document(family)
                )
        result.record([n, k, r, f"exhaustive, size <= {LEMMA6_EXHAUSTIVE_SIZE}", checked], True)

        case_rng = rng.spawn()
        for _ in range(options.samples):
            family = random_intersecting_subfamily(ambient, case_rng)
            if not _compression_holds(universe, family):
                result.record(
                    [n, k, r, "sampled", options.samples], False, message, family_document(family)
                )
        result.record([n, k, r, "sampled", options.samples], True)


def _names(layout: ClawLayout, bits: int) -> str:
    return "{" + ",".join(layout.name(e) for e in elements_of(bits)) + "}"


def _gamma(result: SuiteResult, options: SuiteOptions, n_max: int) -> None:
    rng = SplitMix64(options.seed)
    for n in range(2, n_max + 1):
        layout = ClawLayout(n)
        for r in range(2, n + 1):
            ambient = enumerate_itn(n, r)
            for bits in ambient.members:
                moved = gamma(layout, bits, ambient) != bits
                expected = bool(
                    bits & layout.x0_bit
                    and not bits & layout.x_bit(1)
                    and not bits & layout.y_bit(1)
                )
                if moved != expected:
                    result.record(
                        [n, r, options.samples],
                        False,
                        f"gamma moves {_names(layout, bits)} contrary to its characterization",
                        family_document(Family(ambient.ground_size, (bits,))),
                    )
            case_rng = rng.spawn()
            for _ in range(options.samples):
                family = random_intersecting_subfamily(ambient, case_rng)
                compressed = gamma_compress(layout, family)
                g0, _, g1_prime = split_x0(layout, compressed)
                holds = (
                    len(compressed) == len(family)
                    and is_intersecting(g0)
                    and is_intersecting(g1_prime)
                )
                if not holds:
                    result.record(
                        [n, r, options.samples],
                        False,
                        "Gamma-compression loses size or an intersecting part",
                        family_document(family),
                    )
            result.record([n, r, options.samples], True)


def _eq1(result: SuiteResult, options: SuiteOptions, n_max: int) -> None:
    for n in range(1, n_max + 1):
        graph, layout = build_tn(n)
        for r in range(0, n + 2):
            formula = enumerate_itn(n, r)
            generic = independent_sets(graph, r)
            expected = binom(n, r) * 2**r + binom(n, r - 1)
            holds = formula == generic and len(formula) == expected == itn_size(n, r)
            if r == n + 1:
                top = layout.x0_bit | layout.x_layer
                holds = holds and formula.members == (top,)
            result.record(
                [n, r, len(formula), len(generic), expected],
                holds,
                f"formula and backtracking disagree on I_(T_{n})^({r})",
                {"formula": family_document(formula), "generic": family_document(generic)},
            )


def _lnk(result: SuiteResult, options: SuiteOptions, n_max: int) -> None:
    for n, k, r in LNK_CASES:
        if n > n_max:
            continue
        verdict = lnk_verdict(n, k, r, max_members=options.max_members)
        expected = verdict.annotations["expected_star_size"]
        result.record(
            [n, k, r, verdict.optimum, expected, verdict.star_property],
            verdict.star_property == "holds" and verdict.optimum == expected,
            f"L_({n},{k})^({r}) lacks the star property",
            verdict.witness,
        )


def _case_samples(
    n: int, r: int, options: SuiteOptions, rng: SplitMix64
) -> list[tuple[str, Family]]:
    layout = ClawLayout(n)
    ambient = enumerate_itn(n, r)
    samples = [("x1 star", star(ambient, layout.x(1)))]
    if len(ambient) <= min(OPTIMUM_SAMPLE_MAX, options.max_members):
        branches = BlockSymmetry.claw_branches(layout)
        optimum = max_intersecting(ambient, options.max_members, branches).witness
        samples.append(("optimum", optimum))
    for index in range(options.samples):
        samples.append((f"random #{index}", random_intersecting_subfamily(ambient, rng)))
    return samples


def _record_pipeline(
    result: SuiteResult, label: str, report: PipelineReport, expected: bool, family: Family
) -> None:
    result.record(
        [
            report.n,
            report.r,
            label,
            report.quantities["|E|"],
            report.quantities["|F|"],
            report.passed,
            expected,
        ],
        report.passed == expected,
        f"{report.case} replay on {label}: {report.failures() or 'unexpected pass'}",
        {"E": family_document(family), "report": report.to_dict()},
    )


def _case1(result: SuiteResult, options: SuiteOptions, n_max: int) -> None:
    rng = SplitMix64(options.seed)
    for n in range(3, n_max + 1):
        for r in range(2, n):
            if n < 2 * r - 2:
                continue
            for label, family in _case_samples(n, r, options, rng.spawn()):
                _record_pipeline(result, label, thm5_case1_bound(n, r, family), True, family)


def _case2(result: SuiteResult, options: SuiteOptions, n_max: int) -> None:
    rng = SplitMix64(options.seed)
    for n, r in CASE2_RANGE:
        if n > n_max:
            continue
        for label, family in _case_samples(n, r, options, rng.spawn()):
            _record_pipeline(result, label, thm5_case2_bound(n, r, family), True, family)

    for n, r in CASE2_EVEN_BOUNDARY:
        if n > n_max:
            continue
        for label, family in _case_samples(n, r, options, rng.spawn()):
            report = thm5_case2_bound(n, r, family, allow_even_boundary=True)
            _record_pipeline(result, label, report, True, family)

    for n, r in OUTSIDE_CONJECTURE:
        if n > n_max:
            continue
        layout = ClawLayout(n)
        ambient = enumerate_itn(n, r)
        x1_star = star(ambient, layout.x(1))
        optimum = max_intersecting(
            ambient, options.max_members, BlockSymmetry.claw_branches(layout)
        ).witness
        _record_pipeline(result, "x1 star", thm5_case2_bound(n, r, x1_star), True, x1_star)
        _record_pipeline(result, "optimum", thm5_case2_bound(n, r, optimum), False, optimum)


_PIPELINE_COLUMNS = ("n", "r", "sample", "|E|", "|F|", "passed", "expected", "holds")

SUITES: dict[str, Suite] = {
    suite.name: suite
    for suite in (
        Suite(
            "ekr",
            "extremal-search",
            "max intersecting subfamily of ([n] choose r) has C(n-1, r-1) members, r <= n/2",
            ("n", "r", "optimum", "C(n-1,r-1)", "holds"),
            10,
            _ekr,
        ),
        Suite(
            "thm2",
            "extremal-search",
            "weighted cross-intersecting pairs never beat star_rhs; every proof step holds",
            ("n", "mode", "case", "value", "star_rhs", "holds"),
            5,
            _thm2,
        ),
        Suite(
            "fjt",
            "extremal-search",
            "I_(T_n)^(r) has the star property at x_1 for 2 <= r <= n-1 and lacks it at r = n",
            (
                "n",
                "r",
                "optimum",
                "x1_star_size",
                "largest_star",
                "star_property",
                "expected",
                "holds",
            ),
            6,
            _fjt,
        ),
        Suite(
            "lemma6",
            "labeled-families",
            "full_compress keeps size and intersection and forces |A n B n X_n| >= 1",
            ("n", "k", "r", "mode", "families", "holds"),
            4,
            _lemma6,
        ),
        Suite(
            "gamma",
            "claw-graphs",
            "Gamma keeps size, G_0 and G_1' stay intersecting, gamma moves exactly "
            "the sets with x_0 and without x_1, y_1",
            ("n", "r", "samples", "holds"),
            5,
            _gamma,
        ),
        Suite(
            "eq1",
            "claw-graphs",
            "I_(T_n)^(r) from its two parts equals backtracking enumeration, "
            "with C(n,r) 2^r + C(n,r-1) members",
            ("n", "r", "formula", "backtracking", "expected", "holds"),
            7,
            _eq1,
        ),
        Suite(
            "lnk",
            "labeled-families",
            "L_(n,k)^(r) has the star property with C(n-1,r-1) k^(r-1) members",
            ("n", "k", "r", "optimum", "star_size", "star_property", "holds"),
            4,
            _lnk,
        ),
        Suite(
            "case1",
            "claw-graphs",
            "the n >= 2r-2 replay bounds every intersecting E by the x_1 star",
            _PIPELINE_COLUMNS,
            5,
            _case1,
        ),
        Suite(
            "case2",
            "extremal-search",
            "the n <= 2r-3 replay, and its n = 2r-2 variant, bounds every intersecting E "
            "by the x_1 star; r = n optima break it",
            _PIPELINE_COLUMNS,
            7,
            _case2,
        ),
    )
}


def suite_table() -> list[dict[str, str]]:
    """Name, module and invariant of every registered suite."""
    return [
        {"suite": suite.name, "module": suite.module, "invariant": suite.invariant}
        for suite in SUITES.values()
    ]


def run_suite(name: str, options: SuiteOptions | None = None) -> SuiteResult:
    """
    Run one suite.

    Raises:
        UsageError: For an unknown suite name or n_max < 1
    """
    if name not in SUITES:
        raise UsageError(f"unknown suite {name!r}, choose from {', '.join(SUITES)}", flag="--suite")
    options = options or SuiteOptions()
    suite = SUITES[name]
    n_max = suite.default_n_max if options.n_max is None else options.n_max
    if n_max < 1:
        raise UsageError("must be at least 1", flag="--n-max")

    result = SuiteResult(
        suite=suite.name,
        module=suite.module,
        invariant=suite.invariant,
        columns=list(suite.columns),
        n_max=n_max,
        seed=options.seed,
    )
    logger.info(f"suite {name}: n_max={n_max} seed={options.seed} trials={options.trials}")
    try:
        suite.runner(result, options, n_max)
    except FalsifiedClaimError as e:
        logger.error(f"suite {name} falsified: {e.message}")
        result.failure = e
    except DomainError as e:
        logger.error(f"suite {name} aborted: {e}")
        result.failure = FalsifiedClaimError(name, f"suite aborted: {e}")
    logger.info(f"suite {name}: {len(result.rows)} rows, passed={result.passed}")
    return result
