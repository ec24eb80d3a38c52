"""
JMESPath Custom Functions

Extends JMESPath with functions for querying lab reports: null handling,
exact binomials for comparing search results with closed forms, and set
sizes of witness lines.
"""

from math import comb
from typing import Any

import jmespath
from jmespath import functions

from ..families.formats import EMPTY_SET_TOKEN


class CustomFunctions(functions.Functions):
    """Custom JMESPath functions for lab report queries."""

    @functions.signature(
        {"types": []},  # Accept any type for first arg
        {"types": []},  # Accept any type for second arg
    )
    def _func_nvl(self, value: Any, default: Any) -> Any:
        """
        Return default if value is null (None in Python).

        Useful for the nullable seed and star element fields.

        Args:
            value: Value to check
            default: Default value to return if value is null

        Returns:
            value if not null, otherwise default
        """
        return default if value is None else value

    @functions.signature({"types": ["number"]}, {"types": ["number"]})
    def _func_binom(self, n: int, k: int) -> int:
        """
        Binomial coefficient C(n, k), 0 outside 0 <= k <= n.

        Example:
            rows[?[2] != binom([0], [1])]
        """
        n, k = int(n), int(k)
        if n < 0 or k < 0 or k > n:
            return 0
        return comb(n, k)

    @functions.signature({"types": ["string"]})
    def _func_set_size(self, line: str) -> int | None:
        """
        Number of elements on a witness line ("1,2,3" -> 3, "(1,2),(2,1)" -> 2,
        "-" -> 0).

        Returns null for header lines such as "n=6".
        """
        if line == EMPTY_SET_TOKEN:
            return 0
        if "=" in line:
            return None
        if line.startswith("("):
            return line.count("(")
        return len(line.split(","))


# Create custom options with our functions
_custom_options = jmespath.Options(custom_functions=CustomFunctions())


def search_with_custom_functions(expression: str, data: Any) -> Any:
    """
    Search data using JMESPath expression with custom functions.

    Args:
        expression: JMESPath expression
        data: Data to search

    Returns:
        Query result
    """
    return jmespath.search(expression, data, options=_custom_options)
