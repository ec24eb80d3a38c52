"""
intersecting-lab MCP Server

Exposes the lab over MCP: enumerate families, run exact maximum intersecting
subfamily searches, compress families, maximize weighted cross-intersecting
pairs and run the theorem suites.

Tools return the same documents as the CLI's JSON output, optionally filtered
through a JMESPath query.
"""

import asyncio
import sys
from typing import Any

from fastmcp import FastMCP

from .commands import (
    compress_report,
    enumerate_report,
    graph_star_property_report,
    max_intersecting_report,
    read_family_document,
    read_graph_document,
    read_weights_document,
    resolve_weights,
    star_property_report,
    suites_report,
    verify_report,
    weighted_pair_report,
)
from .config import load_lab_config, log_level_value
from .exceptions import UsageError
from .middleware import MCPLoggingMiddleware
from .reports import Report, apply_query, render_text, to_jsonable
from .search.suites import SuiteOptions
from .utils.logging_config import get_logger, log_dict, log_tool_result, setup_file_logging

config = load_lab_config()
guards = config["guards"]

# Configure logging using centralized utility
setup_file_logging(log_file=config["log_file"], level=log_level_value(config))
logger = get_logger(__name__)

logger.info(f"Python interpreter: {sys.executable}")
logger.info(f"Python version: {sys.version}")
log_dict(logger, "Lab configuration:", dict(config))

# Initialize the MCP server
mcp = FastMCP(
    name="intersecting-lab",
    instructions="""
    An exact laboratory for intersecting set families.

    Families are written one set per line with 1-based elements ("1,2,3"),
    the empty set as "-", after a header "n=<ground size>". Labeled families
    use "n=<n> k=<k>" and pairs "(i,j)"; claw families add the line
    "# claw n=<n> names=x0,x1,...,yn" before the header.

    Searches are exact. Rationals are returned as "p/q" strings.
    Use list_suites to see which claim each theorem suite checks.
    """,
)

# Register MCP request/response logging middleware
# Logs all client MCP requests and responses with "CLIENT_MCP" prefix for easy filtering
mcp.add_middleware(
    MCPLoggingMiddleware(log_request_params=True, log_response_data=True, max_log_length=10000)
)


def _finish(report: Report, jmespath_query: str | None) -> Any:
    document = to_jsonable(report.document)
    if jmespath_query:
        return apply_query(document, jmespath_query)
    return document


# =============================================================================
# TOOLS
# =============================================================================


@mcp.tool()
@log_tool_result(logger)
async def enumerate_family(
    target: str,
    n: int,
    r: int | None = None,
    k: int | None = None,
    jmespath_query: str | None = None,
) -> Any:
    """
    Enumerate one of the lab's families in canonical order.

    Args:
        target: "knr" for ([n] choose r), "lnk" for L_{n,k}^(r), "itn" for the
            r-element independent sets of the depth-two claw T_n, "powerset"
            for all subsets of [n]
        n: Ground parameter
        r: Set size (not used with powerset)
        k: Labels per index (lnk only)
        jmespath_query: Optional JMESPath filter over the document

    Returns:
        {"target", "n", "r", "k", "size", "expected_size", "family": [lines]}
    """
    return _finish(enumerate_report(target, n, r, k, guards), jmespath_query)


@mcp.tool()
@log_tool_result(logger)
async def star_property(
    target: str,
    n: int,
    r: int | None = None,
    k: int | None = None,
    max_members: int | None = None,
    jmespath_query: str | None = None,
) -> Any:
    """
    Decide whether a family has the star property by exact search.

    Args:
        target: "knr", "lnk", "itn" or "powerset" (see enumerate_family)
        n: Ground parameter
        r: Set size
        k: Labels per index (lnk only)
        max_members: Override the search guard
        jmespath_query: Optional JMESPath filter, e.g. "[optimum, largest_star.size]"

    Returns:
        Verdict document: optimum, witness, largest_star, star_property,
        nodes, seed and details with the closed-form star sizes

    Examples:
        # The claw family fails the star property at r = n
        star_property(target="itn", n=3, r=3)  # optimum 7, largest star 6
    """
    report = await asyncio.to_thread(star_property_report, target, n, r, k, guards, max_members)
    return _finish(report, jmespath_query)


@mcp.tool()
@log_tool_result(logger)
async def max_intersecting_family(
    family_text: str, max_members: int | None = None, jmespath_query: str | None = None
) -> Any:
    """
    Largest intersecting subfamily of a family given in the text format.

    The witness is the lexicographically first optimum.
    """
    family, layout = read_family_document(family_text)
    limit = guards["max_members"] if max_members is None else max_members
    report = await asyncio.to_thread(max_intersecting_report, family, layout, limit)
    return _finish(report, jmespath_query)


@mcp.tool()
@log_tool_result(logger)
async def graph_star_property(
    graph_text: str, r: int, max_members: int | None = None, jmespath_query: str | None = None
) -> Any:
    """
    Star property of the r-element independent sets I_G^(r) of a graph.

    Args:
        graph_text: "vertices=<m>" followed by one "u v" edge per line (1-based)
        r: Independent set size
        max_members: Override the search guard
        jmespath_query: Optional JMESPath filter over the document

    Returns:
        Verdict document with details vertex_count, edge_count, r,
        family_size, mu and conjecture_applies (2r <= mu), plus "graph"
    """
    graph = read_graph_document(graph_text)
    report = await asyncio.to_thread(graph_star_property_report, graph, r, guards, max_members)
    return _finish(report, jmespath_query)


@mcp.tool()
@log_tool_result(logger)
async def compress_family_tool(
    family_text: str,
    order: list[list[int]] | None = None,
    jmespath_query: str | None = None,
) -> Any:
    """
    Compress an intersecting family.

    Labeled families go through every Delta_{i,j} (Delta_{1,2} first unless
    order lists the (i, j) factors); claw families go through Gamma and are
    split at x0.
    """
    factors = None if order is None else [(int(i), int(j)) for i, j in order]
    return _finish(compress_report(family_text, order=factors), jmespath_query)


@mcp.tool()
@log_tool_result(logger)
async def weighted_pair_maximum(
    n: int | None = None,
    a: list[str] | None = None,
    b: list[str] | None = None,
    proof_r: int | None = None,
    mode: str = "exhaustive",
    seed: int | None = None,
    trials: int | None = None,
    weights_document: str | None = None,
    trace: bool = False,
    jmespath_query: str | None = None,
) -> Any:
    """
    Maximize sum a_|A| + sum b_|B| over cross-intersecting (A, B), A intersecting.

    Args:
        n: Ground size (exhaustive mode needs n <= 4)
        a: Weights a_0..a_n as strings such as "3" or "5/2"
        b: Weights b_0..b_n
        proof_r: Use a_i = C(n - i, r - i), b_{r-1} = 1 instead of a and b
        mode: "exhaustive" or "sampled"
        seed: Seed for sampled mode (default from configuration)
        trials: Sampled pairs (default from configuration)
        trace: Replay the counting argument on every sampled pair
        weights_document: The pair (a, b) as the JSON mirror or two text
            vectors; replaces a, b and proof_r, and n when omitted

    Returns:
        Verdict document whose largest_star.size is the star value
    """
    if weights_document is not None:
        if a is not None or b is not None or proof_r is not None:
            raise UsageError("cannot be combined with a, b or proof_r", flag="weights_document")
        first, second = read_weights_document(weights_document)
        if n is not None and n != first.n:
            raise UsageError(f"weights are for n={first.n}", flag="n")
        n = first.n
    elif n is None:
        raise UsageError("required unless weights_document is given", flag="n")
    else:
        first, second = resolve_weights(n, a, b, proof_r)
    if mode == "sampled" and seed is None:
        seed = config["default_seed"]
    report = await asyncio.to_thread(
        weighted_pair_report,
        n,
        first,
        second,
        mode,
        seed,
        config["default_trials"] if trials is None else trials,
        trace,
    )
    return _finish(report, jmespath_query)


@mcp.tool()
@log_tool_result(logger)
async def verify_suite(
    suite: str,
    n_max: int | None = None,
    seed: int | None = None,
    trials: int | None = None,
    samples: int | None = None,
    jmespath_query: str | None = None,
) -> Any:
    """
    Run a theorem suite (see list_suites).

    Returns:
        {"suite", "module", "invariant", "n_max", "seed", "columns", "rows",
         "passed"} plus "failure" with a witness when a claim is falsified
    """
    options = SuiteOptions(
        n_max=n_max,
        seed=config["default_seed"] if seed is None else seed,
        trials=config["default_trials"] if trials is None else trials,
        max_members=guards["max_members"],
    )
    if samples is not None:
        options.samples = samples
    report = await asyncio.to_thread(verify_report, suite, options)
    return _finish(report, jmespath_query)


@mcp.tool()
@log_tool_result(logger)
async def list_suites() -> Any:
    """Every theorem suite with the module and claim it checks."""
    return _finish(suites_report(), None)


# =============================================================================
# RESOURCES
# =============================================================================


@mcp.resource("intersecting-lab://suites")
async def get_suites() -> str:
    """The suite registry as a text table"""
    return render_text(suites_report())


# =============================================================================
# MAIN
# =============================================================================


def main() -> None:
    """Run the MCP server over stdio"""
    logger.info("Initializing intersecting-lab MCP Server...")
    mcp.run()


if __name__ == "__main__":
    main()
