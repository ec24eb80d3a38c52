"""
Text formats for families, labeled families, graphs, claw families and weights

Family:
    n=<ground_size>
    1,2
    2,3
    -              (the empty set)

One set per line, 1-based elements increasing, lines in canonical order.
Lines starting with '#' may precede the header.

Labeled family: header "n=<n> k=<k>", sets written as "(i,j),(i,j)".
Graph: header "vertices=<m>", one "u v" line per edge.
Claw family: the sidecar line "# claw n=<n> names=x0,x1,...,yn" followed by a
plain family over [2n + 1].
Weights: header "n=<n>", then n + 1 lines "i num/den".
"""

import re
from typing import Any

from ..exceptions import FormatError
from .claw import ClawLayout, Graph
from .labeled import LabeledUniverse
from .sets import Family, elements_of, mask_of
from .weights import WeightVector, to_fraction

EMPTY_SET_TOKEN = "-"

_HEADER = re.compile(r"^n=(\d+)$")
_LABELED_HEADER = re.compile(r"^n=(\d+)\s+k=(\d+)$")
_GRAPH_HEADER = re.compile(r"^vertices=(\d+)$")
_CLAW_HEADER = re.compile(r"^#\s*claw\s+n=(\d+)\s+names=(\S+)$")
_PAIR = re.compile(r"\((\d+),(\d+)\)")


def _body(text: str, header: re.Pattern[str]) -> tuple[re.Match[str], list[tuple[int, str]]]:
    """Split off the header, allowing '#' comments before it."""
    lines = text.splitlines()
    for index, raw in enumerate(lines):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        match = header.match(line)
        if match is None:
            raise FormatError(f"Expected header matching {header.pattern!r}", line=index + 1)
        body = [(number + 1, lines[number].strip()) for number in range(index + 1, len(lines))]
        return match, body
    raise FormatError("Missing header")


def family_lines(family: Family) -> list[str]:
    """The set lines of a family, without the header."""
    return [
        ",".join(str(e) for e in elements_of(bits)) if bits else EMPTY_SET_TOKEN
        for bits in family.members
    ]


def format_family(family: Family) -> str:
    return "\n".join([f"n={family.ground_size}", *family_lines(family)]) + "\n"


def _parse_set_line(line: str, line_number: int, ground_size: int, strict: bool) -> int:
    if not line:
        raise FormatError("Empty line (write the empty set as '-')", line=line_number)
    if line == EMPTY_SET_TOKEN:
        return 0
    try:
        elements = [int(token) for token in line.split(",")]
    except ValueError:
        raise FormatError(f"Malformed set line {line!r}", line=line_number) from None
    if any(not 1 <= e <= ground_size for e in elements):
        raise FormatError(f"Element outside [{ground_size}] in {line!r}", line=line_number)
    if strict and any(a >= b for a, b in zip(elements, elements[1:])):
        raise FormatError(f"Elements not strictly increasing in {line!r}", line=line_number)
    return mask_of(elements)


def parse_family(text: str, strict: bool = True) -> Family:
    """
    Parse the family text format.

    Args:
        text: Document text
        strict: Require canonical order; otherwise sets are sorted and deduplicated

    Raises:
        FormatError: On malformed input, with the 1-based line number
    """
    match, body = _body(text, _HEADER)
    ground_size = int(match.group(1))
    masks = []
    for line_number, line in body:
        bits = _parse_set_line(line, line_number, ground_size, strict)
        if strict and masks and bits <= masks[-1]:
            raise FormatError("Sets out of canonical order or duplicated", line=line_number)
        masks.append(bits)
    return Family.from_masks(ground_size, masks)


def format_labeled_family(universe: LabeledUniverse, family: Family) -> str:
    lines = [f"n={universe.n} k={universe.k}"]
    for bits in family.members:
        pairs = universe.pairs(bits)
        lines.append(",".join(f"({i},{j})" for i, j in pairs) if pairs else EMPTY_SET_TOKEN)
    return "\n".join(lines) + "\n"


def parse_labeled_family(text: str) -> tuple[LabeledUniverse, Family]:
    """
    Parse the labeled-family format.

    Raises:
        FormatError: On malformed pairs, repeated indices or bad headers
    """
    match, body = _body(text, _LABELED_HEADER)
    universe = LabeledUniverse(int(match.group(1)), int(match.group(2)))
    masks = []
    for line_number, line in body:
        if not line:
            raise FormatError("Empty line (write the empty set as '-')", line=line_number)
        if line == EMPTY_SET_TOKEN:
            masks.append(0)
            continue
        pairs = [(int(i), int(j)) for i, j in _PAIR.findall(line)]
        if _PAIR.sub("", line).replace(",", "").strip() or not pairs:
            raise FormatError(f"Malformed labeled set {line!r}", line=line_number)
        if any(not (1 <= i <= universe.n and 1 <= j <= universe.k) for i, j in pairs):
            raise FormatError(f"Pair outside [{universe.n}] x [{universe.k}]", line=line_number)
        bits = universe.mask_of_pairs(pairs)
        if bits.bit_count() != len(pairs) or not universe.has_distinct_indices(bits):
            raise FormatError(f"Labeled set repeats an index: {line!r}", line=line_number)
        masks.append(bits)
    return universe, Family.from_masks(universe.ground_size, masks)


def format_graph(graph: Graph) -> str:
    lines = [f"vertices={graph.vertex_count}"]
    lines.extend(f"{u} {v}" for u, v in graph.edges())
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    match, body = _body(text, _GRAPH_HEADER)
    vertex_count = int(match.group(1))
    edges = []
    for line_number, line in body:
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2 or not all(part.isdigit() for part in parts):
            raise FormatError(f"Malformed edge line {line!r}", line=line_number)
        u, v = int(parts[0]), int(parts[1])
        if not (1 <= u <= vertex_count and 1 <= v <= vertex_count) or u == v:
            raise FormatError(f"Invalid edge {u} {v}", line=line_number)
        edges.append((u, v))
    return Graph.from_edges(vertex_count, edges)


def claw_header(layout: ClawLayout) -> str:
    return f"# claw n={layout.n} names={','.join(layout.names())}"


def format_claw_family(layout: ClawLayout, family: Family) -> str:
    return claw_header(layout) + "\n" + format_family(family)


def parse_claw_family(text: str) -> tuple[ClawLayout, Family]:
    """
    Parse a claw family: the sidecar header, then a plain family over [2n + 1].

    Raises:
        FormatError: If the sidecar header is missing or disagrees with the body
    """
    for index, raw in enumerate(text.splitlines()):
        match = _CLAW_HEADER.match(raw.strip())
        if match:
            layout = ClawLayout(int(match.group(1)))
            if match.group(2).split(",") != layout.names():
                raise FormatError("Claw vertex names do not match the layout", line=index + 1)
            break
    else:
        raise FormatError("Missing '# claw n=<n> names=...' header")

    family = parse_family(text)
    if family.ground_size != layout.ground_size:
        raise FormatError(
            f"Claw T_{layout.n} needs ground size {layout.ground_size}, got {family.ground_size}"
        )
    return layout, family


def detect_format(text: str) -> str:
    """One of "claw", "labeled", "graph" or "family", judged from the header."""
    for raw in text.splitlines():
        line = raw.strip()
        if _CLAW_HEADER.match(line):
            return "claw"
        if not line or line.startswith("#"):
            continue
        if _LABELED_HEADER.match(line):
            return "labeled"
        if _GRAPH_HEADER.match(line):
            return "graph"
        return "family"
    raise FormatError("Empty document")


def format_weights(weights: WeightVector) -> str:
    lines = [f"n={weights.n}"]
    for index, value in enumerate(weights.values):
        lines.append(f"{index} {value.numerator}/{value.denominator}")
    return "\n".join(lines) + "\n"


def parse_weights(text: str) -> WeightVector:
    """
    Parse "n=<n>" followed by n + 1 lines "i num/den" (plain integers allowed).

    Raises:
        FormatError: On missing, repeated or malformed entries
    """
    match, body = _body(text, _HEADER)
    n = int(match.group(1))
    values: dict[int, Any] = {}
    for line_number, line in body:
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2 or not parts[0].isdigit():
            raise FormatError(f"Malformed weight line {line!r}", line=line_number)
        index = int(parts[0])
        if index > n or index in values:
            raise FormatError(f"Unexpected weight index {index}", line=line_number)
        try:
            values[index] = to_fraction(parts[1])
        except ValueError:
            raise FormatError(f"Malformed rational {parts[1]!r}", line=line_number) from None
    if len(values) != n + 1:
        raise FormatError(f"Expected {n + 1} weights, got {len(values)}")
    return WeightVector(n, tuple(values[i] for i in range(n + 1)))


def weights_to_json(weights: WeightVector) -> dict[str, Any]:
    """JSON mirror with string rationals."""
    return {"n": weights.n, "weights": weights.as_strings()}


def weights_from_json(data: dict[str, Any]) -> WeightVector:
    try:
        return WeightVector(int(data["n"]), tuple(str(v) for v in data["weights"]))
    except (KeyError, TypeError) as e:
        raise FormatError(f"Malformed weight document: {e}") from e
