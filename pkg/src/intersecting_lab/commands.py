"""
Report builders shared by the command line and the MCP server

Each builder validates its arguments, runs one lab operation and returns a
Report whose JSON document, CSV table and text rendering are fixed here.

CSV columns:
    enumerate, compress      index, size, set
    star-property,
    max-intersecting,
    graph-star-property,
    weighted-pair            optimum, largest_star_element, largest_star_size,
                             star_property, nodes, seed
    verify                   the suite's own columns, holds last
    verify --list            suite, module, invariant
"""

import json
import logging
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any

from .config import DEFAULT_GUARDS, SearchGuards
from .exceptions import FormatError, LabError, SizeLimitError, UsageError
from .families.claw import (
    ClawLayout,
    Graph,
    build_tn,
    enumerate_itn,
    gamma_compress,
    independent_sets,
    itn_size,
    mu,
    split_x0,
)
from .families.formats import (
    detect_format,
    family_lines,
    format_claw_family,
    format_family,
    format_graph,
    format_labeled_family,
    format_weights,
    parse_claw_family,
    parse_family,
    parse_graph,
    parse_labeled_family,
    parse_weights,
    weights_from_json,
    weights_to_json,
)
from .families.labeled import (
    LabeledUniverse,
    enumerate_lnk,
    full_compress,
    meets_x_layer_pairwise,
)
from .families.sets import Family, binom, is_intersecting, k_subsets, power_set
from .families.weights import RationalLike, WeightVector, proof_weights
from .reports import Report, to_jsonable
from .search.extremal import fjt_verdict, lnk_verdict, max_intersecting
from .search.suites import SuiteOptions, run_suite, suite_table
from .search.verdict import SearchVerdict
from .search.weighted import max_weighted_pair, verify_optimal_b_reduction
from .types import (
    CompressionDocument,
    EnumerationDocument,
    ErrorDocument,
    SuiteDocument,
    VerdictDocument,
)

logger = logging.getLogger(__name__)

TARGETS = ("knr", "lnk", "itn", "powerset")
VERDICT_COLUMNS = [
    "optimum",
    "largest_star_element",
    "largest_star_size",
    "star_property",
    "nodes",
    "seed",
]
FAMILY_COLUMNS = ["index", "size", "set"]


@dataclass
class Target:
    """An enumerated family with its text rendering and closed-form size."""

    name: str
    n: int
    family: Family
    text: str
    expected_size: int
    layout: ClawLayout | None = None


def _require(value: int | None, flag: str, target: str, minimum: int = 0) -> int:
    if value is None:
        raise UsageError(f"required for --target {target}", flag=flag)
    if value < minimum:
        raise UsageError(f"must be at least {minimum}", flag=flag)
    return value


def _reject(value: int | None, flag: str, target: str) -> None:
    if value is not None:
        raise UsageError(f"does not apply to --target {target}", flag=flag)


def build_target(
    target: str,
    n: int | None,
    r: int | None = None,
    k: int | None = None,
    guards: SearchGuards | None = None,
) -> Target:
    """
    Enumerate ([n] choose r), L_{n,k}^(r), I_{T_n}^(r) or 2^[n].

    Raises:
        UsageError: For an unknown target or a missing / superfluous flag
        SizeLimitError: If the family exceeds the enumeration guards
    """
    guards = guards or DEFAULT_GUARDS
    limit = guards["max_enumeration"]
    if target not in TARGETS:
        raise UsageError(f"must be one of {', '.join(TARGETS)}", flag="--target")
    n = _require(n, "--n", target, minimum=1 if target in ("lnk", "itn") else 0)

    if target == "powerset":
        _reject(r, "--r", target)
        _reject(k, "--k", target)
        family = power_set(n, max_n=guards["max_power_set_n"])
        return Target(target, n, family, format_family(family), 2**n)

    r = _require(r, "--r", target)
    if target == "knr":
        _reject(k, "--k", target)
        family = k_subsets(n, r, limit=limit)
        return Target(target, n, family, format_family(family), binom(n, r))

    if target == "lnk":
        k = _require(k, "--k", target, minimum=1)
        universe = LabeledUniverse(n, k)
        family = enumerate_lnk(universe, r, limit=limit)
        expected = binom(n, r) * k**r
        return Target(target, n, family, format_labeled_family(universe, family), expected)

    _reject(k, "--k", target)
    layout = ClawLayout(n)
    family = enumerate_itn(n, r, limit=limit)
    return Target(
        target, n, family, format_claw_family(layout, family), itn_size(n, r), layout=layout
    )


def _family_rows(family: Family) -> list[list[Any]]:
    return [
        [index, bits.bit_count(), line]
        for index, (bits, line) in enumerate(zip(family.members, family_lines(family)), start=1)
    ]


def enumerate_report(
    target: str,
    n: int | None,
    r: int | None = None,
    k: int | None = None,
    guards: SearchGuards | None = None,
) -> Report:
    """The enumerated family; the text rendering is a loadable family file."""
    built = build_target(target, n, r, k, guards)
    logger.info(f"enumerate {target} n={n} r={r} k={k}: {len(built.family)} sets")
    document: EnumerationDocument = {
        "target": target,
        "n": n,
        "r": r,
        "k": k,
        "size": len(built.family),
        "expected_size": built.expected_size,
        "family": built.text.splitlines(),
    }
    return Report(
        kind="enumerate",
        document=dict(document),
        columns=FAMILY_COLUMNS,
        rows=_family_rows(built.family),
        text=built.text,
    )


def _verdict_text(title: str, verdict: SearchVerdict, star_name: str | None) -> str:
    document = verdict.to_dict()
    lines = [
        f"{title}",
        f"  star property: {verdict.star_property}",
        f"  optimum: {document['optimum']}",
        f"  largest star: {document['largest_star']['size']} at {star_name}",
        f"  nodes: {verdict.nodes_explored}",
    ]
    if verdict.seed is not None:
        lines.append(f"  seed: {verdict.seed}")
    for key, value in document.get("details", {}).items():
        lines.append(f"  {key}: {value}")
    witness = document["witness"]
    if isinstance(witness, dict):
        for side, side_lines in witness.items():
            lines.append(f"  witness {side}:")
            lines.extend(f"    {line}" for line in side_lines)
    elif witness:
        lines.append("  witness:")
        lines.extend(f"    {line}" for line in witness)
    return "\n".join(lines) + "\n"


def verdict_report(
    kind: str, verdict: SearchVerdict, layout: ClawLayout | None = None
) -> Report:
    """A SearchVerdict as a report; claw layouts name the star vertex."""
    document: VerdictDocument = verdict.to_dict()  # type: ignore[assignment]
    element = verdict.star_element
    star_name = None if element is None else str(element)
    if layout is not None and element is not None:
        star_name = layout.name(element)
    row = [
        document["optimum"],
        star_name,
        document["largest_star"]["size"],
        verdict.star_property,
        verdict.nodes_explored,
        verdict.seed,
    ]
    return Report(
        kind=kind,
        document=dict(document),
        columns=VERDICT_COLUMNS,
        rows=[row],
        text=_verdict_text(kind, verdict, star_name),
    )


def star_property_report(
    target: str,
    n: int | None,
    r: int | None = None,
    k: int | None = None,
    guards: SearchGuards | None = None,
    max_members: int | None = None,
) -> Report:
    """
    Star-property verdict for an enumerated target, with the closed-form
    star sizes next to the searched optimum.
    """
    guards = guards or DEFAULT_GUARDS
    max_members = guards["max_members"] if max_members is None else max_members
    built = build_target(target, n, r, k, guards)
    n = built.n

    if target == "itn" and r is not None and 1 <= r <= n + 1:
        verdict = fjt_verdict(n, r, max_members=max_members)
        graph, _ = build_tn(n)
        if graph.vertex_count <= guards["mu_max_vertices"]:
            # star property is expected for r <= mu(T_n) / 2
            verdict.annotations["mu"] = mu(graph, max_vertices=guards["mu_max_vertices"])
    elif target == "lnk" and r is not None and k is not None and 1 <= r <= n:
        verdict = lnk_verdict(n, k, r, max_members=max_members)
    else:
        verdict = max_intersecting(built.family, max_members=max_members)
        verdict.annotations = {"n": n, "r": r, "family_size": len(built.family)}
        if target == "knr" and r is not None and 1 <= r <= n // 2:
            verdict.annotations["ekr_bound"] = binom(n - 1, r - 1)
    verdict.annotations = {"target": target, **verdict.annotations}
    return verdict_report("star-property", verdict, built.layout)


def read_family_document(text: str) -> tuple[Family, ClawLayout | None]:
    """
    Load a family file in the plain, claw or labeled format.

    Raises:
        UsageError: For a graph file
        FormatError: On malformed input
    """
    kind = detect_format(text)
    if kind == "claw":
        layout, family = parse_claw_family(text)
        return family, layout
    if kind == "labeled":
        return parse_labeled_family(text)[1], None
    if kind == "graph":
        raise UsageError("expects a family file, got a graph", flag="--in")
    return parse_family(text, strict=False), None


def max_intersecting_report(
    family: Family, layout: ClawLayout | None = None, max_members: int | None = None
) -> Report:
    """Exact maximum intersecting subfamily of a loaded or enumerated family."""
    limit = DEFAULT_GUARDS["max_members"] if max_members is None else max_members
    verdict = max_intersecting(family, max_members=limit)
    verdict.annotations = {"family_size": len(family), "ground_size": family.ground_size}
    return verdict_report("max-intersecting", verdict, layout)


def read_graph_document(text: str) -> Graph:
    """
    Load a graph file ("vertices=<m>" then one "u v" edge per line).

    Raises:
        UsageError: For a family file
        FormatError: On malformed input
    """
    if detect_format(text) != "graph":
        raise UsageError("expects a graph file with header vertices=<m>", flag="--in")
    return parse_graph(text)


def graph_star_property_report(
    graph: Graph,
    r: int,
    guards: SearchGuards | None = None,
    max_members: int | None = None,
) -> Report:
    """
    Star-property verdict for I_G^(r) of a loaded graph, next to mu(G).

    The star property is conjectured for 1 <= r <= mu(G) / 2; mu is left out
    when the graph exceeds the mu guard.
    """
    guards = guards or DEFAULT_GUARDS
    limit = guards["max_members"] if max_members is None else max_members
    if r < 1:
        raise UsageError("must be at least 1", flag="--r")
    family = independent_sets(graph, r, limit=guards["max_enumeration"])
    verdict = max_intersecting(family, max_members=limit)
    annotations: dict[str, Any] = {
        "vertex_count": graph.vertex_count,
        "edge_count": len(graph.edges()),
        "r": r,
        "family_size": len(family),
    }
    if graph.vertex_count <= guards["mu_max_vertices"]:
        smallest = mu(graph, max_vertices=guards["mu_max_vertices"])
        annotations["mu"] = smallest
        annotations["conjecture_applies"] = 2 * r <= smallest
    verdict.annotations = annotations
    report = verdict_report("graph-star-property", verdict)
    report.document["graph"] = format_graph(graph).splitlines()
    return report


def compress_report(text: str, order: list[tuple[int, int]] | None = None) -> Report:
    """
    Compress a labeled family with the composed Delta operators, or a claw
    family with Gamma.

    Raises:
        UsageError: For plain families and graphs, or an order given with a
            claw family
        DomainError: If the family is not intersecting or not uniform
    """
    kind = detect_format(text)
    if kind == "labeled":
        universe, family = parse_labeled_family(text)
        compressed = full_compress(universe, family, order=order)
        output_text = format_labeled_family(universe, compressed)
        document: CompressionDocument = {
            "kind": "labeled",
            "size": len(compressed),
            "input": format_labeled_family(universe, family).splitlines(),
            "output": output_text.splitlines(),
            "intersecting": is_intersecting(compressed),
            "x_layer_meets": meets_x_layer_pairwise(universe, compressed),
        }
    elif kind == "claw":
        if order is not None:
            raise UsageError("only applies to labeled families", flag="--order")
        layout, family = parse_claw_family(text)
        compressed = gamma_compress(layout, family)
        g0, g1, g1_prime = split_x0(layout, compressed)
        output_text = format_claw_family(layout, compressed)
        document = {
            "kind": "claw",
            "size": len(compressed),
            "input": format_claw_family(layout, family).splitlines(),
            "output": output_text.splitlines(),
            "intersecting": is_intersecting(compressed),
            "split": {
                "G_0": len(g0),
                "G_1": len(g1),
                "G_0 intersecting": is_intersecting(g0),
                "G_1' intersecting": is_intersecting(g1_prime),
            },
        }
    else:
        raise UsageError("compress needs a labeled or claw family file", flag="--in")

    logger.info(f"compress {kind}: {len(compressed)} sets")
    return Report(
        kind="compress",
        document=dict(document),
        columns=FAMILY_COLUMNS,
        rows=_family_rows(compressed),
        text=output_text,
    )


def resolve_weights(
    n: int,
    a: Sequence[RationalLike] | None = None,
    b: Sequence[RationalLike] | None = None,
    proof_r: int | None = None,
) -> tuple[WeightVector, WeightVector]:
    """
    Explicit weight lists, or the proof weights a_i = C(n - i, r - i), b_{r-1} = 1.

    Raises:
        UsageError: Unless exactly one of (a and b) or proof_r is given
        DomainError: For negative or malformed weights
    """
    if proof_r is not None:
        if a is not None or b is not None:
            raise UsageError("cannot be combined with explicit weights", flag="--proof-r")
        return proof_weights(n, proof_r)
    if a is None:
        raise UsageError("required unless --proof-r is given", flag="--a")
    if b is None:
        raise UsageError("required unless --proof-r is given", flag="--b")
    return WeightVector.of(a), WeightVector.of(b)


def read_weights_document(text: str) -> tuple[WeightVector, WeightVector]:
    """
    Load a weight pair (a, b).

    Either the JSON mirror {"a": {"n": .., "weights": [..]}, "b": {..}} with
    string rationals, or two text vectors ("n=<n>" then "i num/den" lines)
    one after the other, a first.

    Raises:
        FormatError: On malformed input or vectors over different n
    """
    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise FormatError(f"Malformed JSON weights: {e.msg}", line=e.lineno) from e
        if not isinstance(data, dict) or "a" not in data or "b" not in data:
            raise FormatError('Weight document needs "a" and "b"')
        a, b = weights_from_json(data["a"]), weights_from_json(data["b"])
    else:
        lines = text.splitlines()
        headers = [i for i, line in enumerate(lines) if line.strip().startswith("n=")]
        if len(headers) != 2:
            raise FormatError(f"Expected two weight vectors, found {len(headers)}")
        a = parse_weights("\n".join(lines[: headers[1]]))
        b = parse_weights("\n".join(lines[headers[1] :]))
    if a.n != b.n:
        raise FormatError(f"Weight vectors differ in n: {a.n} and {b.n}")
    return a, b


def weighted_pair_report(
    n: int,
    a: WeightVector,
    b: WeightVector,
    mode: str = "exhaustive",
    seed: int | None = None,
    trials: int = 10_000,
    trace: bool = False,
    check_reduction: bool = False,
) -> Report:
    """
    Best weighted cross-intersecting pair against star_rhs.

    check_reduction adds the brute-force optimal-B check (n <= 3).
    """
    if mode not in ("exhaustive", "sampled"):
        raise UsageError("must be exhaustive or sampled", flag="--mode")
    verdict = max_weighted_pair(
        n, a, b, mode=mode, seed=seed, trials=trials, trace=trace  # type: ignore[arg-type]
    )
    verdict.annotations["a"] = a.as_strings()
    verdict.annotations["b"] = b.as_strings()
    if check_reduction:
        verdict.annotations["b_reduction"] = verify_optimal_b_reduction(a, b)
    report = verdict_report("weighted-pair", verdict)
    # loadable again with weighted-pair --weights
    report.document["weights"] = {"a": weights_to_json(a), "b": weights_to_json(b)}
    text = [report.text or ""]
    for name, weights in (("a", a), ("b", b)):
        text.append(f"  weights {name}:\n")
        text.extend(f"    {line}\n" for line in format_weights(weights).splitlines())
    report.text = "".join(text)
    return report


def _table_text(title: str, columns: list[str], rows: list[list[Any]]) -> str:
    cells = [columns] + [["" if cell is None else str(cell) for cell in row] for row in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(columns))]
    lines = [title]
    for row in cells:
        lines.append("  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def verify_report(suite: str, options: SuiteOptions | None = None) -> Report:
    """Run a theorem suite; the report fails when the suite is falsified."""
    result = run_suite(suite, options)
    document: SuiteDocument = result.to_dict()  # type: ignore[assignment]
    status = "verified" if result.passed else "FALSIFIED"
    title = f"suite {result.suite} ({result.module}): {status}"
    text = _table_text(title, result.columns, [to_jsonable(row) for row in result.rows])
    if result.failure is not None:
        text += f"failure: {result.failure.message}\n"
    return Report(
        kind="verify",
        document=dict(document),
        columns=result.columns,
        rows=result.rows,
        text=text,
        passed=result.passed,
    )


def suites_report() -> Report:
    """verify --list: every suite with the module whose claims it checks."""
    table = suite_table()
    columns = ["suite", "module", "invariant"]
    rows = [[entry["suite"], entry["module"], entry["invariant"]] for entry in table]
    return Report(
        kind="suites",
        document={"suites": table},
        columns=columns,
        rows=rows,
        text=_table_text("suites", columns, rows),
    )


def error_document(error: LabError) -> dict[str, ErrorDocument]:
    """The {"error": {...}} document for a usage, format or guard error."""
    body: ErrorDocument = {"type": type(error).__name__, "message": str(error)}
    if isinstance(error, UsageError) and error.flag:
        body["flag"] = error.flag
    if isinstance(error, FormatError) and error.line is not None:
        body["line"] = error.line
    if isinstance(error, SizeLimitError):
        if error.limit is not None:
            body["limit"] = error.limit
        if error.requested is not None:
            body["requested"] = error.requested
    return {"error": body}
