"""
Type Definitions

TypedDict classes for the JSON documents produced by the CLI and the MCP
tools.
"""

from typing import Any, TypedDict


class LargestStarDocument(TypedDict):
    """Element with the largest star (null when F has no non-empty member)."""

    element: int | None
    size: int | str


class VerdictDocument(TypedDict, total=False):
    """
    Result of an exact or sampled search.

    optimum and largest_star.size are integers, or "p/q" strings for
    weighted searches. witness holds family lines (header first), or
    {"A": [...], "B": [...]} for a weighted pair.
    """

    optimum: int | str
    witness: list[str] | dict[str, list[str]] | None
    largest_star: LargestStarDocument
    star_property: str
    nodes: int
    seed: int | None
    details: dict[str, Any]
    optima: list[Any]


class EnumerationDocument(TypedDict):
    """An enumerated family and how it was produced."""

    target: str
    n: int
    r: int | None
    k: int | None
    size: int
    expected_size: int
    family: list[str]


class CompressionDocument(TypedDict, total=False):
    """A family before and after compression."""

    kind: str
    size: int
    input: list[str]
    output: list[str]
    intersecting: bool
    x_layer_meets: bool
    split: dict[str, Any]


class SuiteDocument(TypedDict, total=False):
    """Rows checked by a theorem suite."""

    suite: str
    module: str
    invariant: str
    n_max: int
    seed: int
    columns: list[str]
    rows: list[dict[str, Any]]
    passed: bool
    failure: dict[str, Any]


class SuiteListing(TypedDict):
    suite: str
    module: str
    invariant: str


class ErrorDocument(TypedDict, total=False):
    """Body of the {"error": {...}} document printed on exit code 1."""

    type: str
    message: str
    flag: str
    line: int
    limit: int
    requested: int
