"""Tests for report rendering"""

import json
from fractions import Fraction

import pytest
import yaml

from intersecting_lab.exceptions import UsageError
from intersecting_lab.families.sets import Family
from intersecting_lab.reports import (
    Report,
    apply_query,
    family_document,
    render,
    render_csv,
    to_jsonable,
)


@pytest.fixture
def report() -> Report:
    return Report(
        kind="star-property",
        document={"optimum": Fraction(5), "ratio": Fraction(7, 2), "witness": None},
        columns=["optimum", "seed"],
        rows=[[Fraction(5), None]],
    )


class TestToJsonable:
    """Tests for to_jsonable"""

    def test_fractions(self):
        assert to_jsonable(Fraction(4, 2)) == 2
        assert to_jsonable(Fraction(1, 3)) == "1/3"

    def test_families(self):
        family = Family.from_sets(3, [[1], [2, 3]])
        assert to_jsonable({"F": family}) == {"F": ["n=3", "1", "2,3"]}
        assert family_document(Family.empty(2)) == ["n=2"]

    def test_nested(self):
        assert to_jsonable({1: (Fraction(1, 2), True, None)}) == {"1": ["1/2", True, None]}


class TestRender:
    """Tests for render"""

    def test_json(self, report):
        assert json.loads(render(report, "json")) == {
            "optimum": 5,
            "ratio": "7/2",
            "witness": None,
        }

    def test_yaml_keeps_key_order(self, report):
        text = render(report, "yaml")
        assert text.splitlines()[0] == "optimum: 5"
        assert yaml.safe_load(text)["ratio"] == "7/2"

    def test_csv(self, report):
        assert render(report, "CSV") == "optimum,seed\n5,\n"

    def test_text_fallback(self, report):
        assert render(report, "text").splitlines() == [
            "star-property:",
            "  optimum: 5",
            "  ratio: 7/2",
            "  witness: None",
        ]

    def test_text_prefers_prepared_text(self, report):
        report.text = "n=1\n1\n"
        assert render(report, "text") == "n=1\n1\n"

    def test_query(self, report):
        assert json.loads(render(report, "json", "ratio")) == "7/2"

    def test_query_needs_json_or_yaml(self, report):
        with pytest.raises(UsageError) as excinfo:
            render(report, "csv", "optimum")
        assert excinfo.value.flag == "--query"

    def test_unknown_format(self, report):
        with pytest.raises(UsageError) as excinfo:
            render(report, "xml")
        assert excinfo.value.flag == "--format"

    def test_output_is_stable(self, report):
        assert render(report, "json") == render(report, "json")


def test_invalid_query():
    with pytest.raises(UsageError, match="Invalid JMESPath query"):
        apply_query({"a": 1}, "a[")


def test_csv_quotes_set_lines():
    assert render_csv(["set"], [["1,2"]]) == 'set\n"1,2"\n'
