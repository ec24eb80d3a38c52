"""
Report rendering for intersecting-lab

Every command produces a Report: a JSON-ready document plus a fixed CSV
table and a human-readable text rendering. Output is a pure function of the
report, so identical runs give byte-identical output.
"""

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import yaml

from .exceptions import UsageError
from .families.formats import format_family
from .families.sets import Family
from .utils.jmespath_extensions import search_with_custom_functions

REPORT_FORMATS = ("json", "csv", "text", "yaml")


def to_jsonable(value: Any) -> Any:
    """Fractions become int or "p/q", families become their text lines."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return value.numerator
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, Family):
        return family_document(value)
    if isinstance(value, dict):
        return {str(key): to_jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(item) for item in value]
    if hasattr(value, "to_dict"):
        return to_jsonable(value.to_dict())
    return value


def family_document(family: Family) -> list[str]:
    """A family as the lines of its text format, header first."""
    return format_family(family).splitlines()


@dataclass
class Report:
    """A rendered-on-demand command result."""

    kind: str
    document: dict[str, Any]
    columns: list[str] = field(default_factory=list)
    rows: list[list[Any]] = field(default_factory=list)
    text: str | None = None
    passed: bool = True


def apply_query(document: Any, expression: str) -> Any:
    """
    Filter a document with a JMESPath expression (custom functions included).

    Raises:
        UsageError: If the expression does not compile or evaluate
    """
    try:
        return search_with_custom_functions(expression, document)
    except Exception as e:
        raise UsageError(f"Invalid JMESPath query: {e}", flag="--query") from e


def render_json(document: Any) -> str:
    return json.dumps(to_jsonable(document), indent=2) + "\n"


def render_yaml(document: Any) -> str:
    return yaml.safe_dump(
        to_jsonable(document), default_flow_style=False, allow_unicode=True, sort_keys=False
    )


def render_csv(columns: list[str], rows: list[list[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow(["" if cell is None else to_jsonable(cell) for cell in row])
    return buffer.getvalue()


def render_text(report: Report) -> str:
    if report.text is not None:
        return report.text
    lines = [f"{report.kind}:"]
    for key, value in to_jsonable(report.document).items():
        if isinstance(value, (dict, list)):
            value = json.dumps(value)
        lines.append(f"  {key}: {value}")
    return "\n".join(lines) + "\n"


def render(report: Report, output_format: str, query: str | None = None) -> str:
    """
    Render a report in one of json, csv, text or yaml.

    A query applies to the JSON document, so it is only accepted with json or
    yaml output.

    Raises:
        UsageError: For an unknown format or a query combined with csv/text
    """
    output_format = output_format.lower()
    if output_format not in REPORT_FORMATS:
        raise UsageError(f"must be one of {', '.join(REPORT_FORMATS)}", flag="--format")

    if query is not None:
        if output_format not in ("json", "yaml"):
            raise UsageError("only applies to json or yaml output", flag="--query")
        selected = apply_query(to_jsonable(report.document), query)
        return render_json(selected) if output_format == "json" else render_yaml(selected)

    if output_format == "json":
        return render_json(report.document)
    if output_format == "yaml":
        return render_yaml(report.document)
    if output_format == "csv":
        return render_csv(report.columns, report.rows)
    return render_text(report)
