"""
Tests for the intersecting-lab MCP server
"""

import json
import logging

import pytest
from fastmcp import Client

from intersecting_lab import server
from intersecting_lab.exceptions import UsageError
from intersecting_lab.families.formats import format_claw_family
from intersecting_lab.families.sets import Family
from intersecting_lab.server import mcp


def test_server_name():
    """Test that the server has the correct name"""
    assert mcp.name == "intersecting-lab"


def test_server_instructions():
    """Test that the server describes the family format"""
    assert mcp.instructions is not None
    assert "n=<ground size>" in mcp.instructions


@pytest.mark.asyncio
async def test_enumerate_family():
    result = await server.enumerate_family.fn(target="knr", n=4, r=2)
    assert result["size"] == 6
    assert result["family"][:2] == ["n=4", "1,2"]


@pytest.mark.asyncio
async def test_star_property_claw_fails_at_r_equals_n():
    result = await server.star_property.fn(target="itn", n=3, r=3)
    assert result["optimum"] == 7
    assert result["largest_star"]["size"] == 6
    assert result["star_property"] == "fails"


@pytest.mark.asyncio
async def test_star_property_with_query():
    result = await server.star_property.fn(
        target="knr", n=5, r=2, jmespath_query="[optimum, largest_star.size]"
    )
    assert result == [4, 4]


@pytest.mark.asyncio
async def test_max_intersecting_family():
    result = await server.max_intersecting_family.fn(family_text="n=3\n1,2\n1,3\n2,3\n")
    assert result["optimum"] == 3
    assert result["witness"] == ["n=3", "1,2", "1,3", "2,3"]


@pytest.mark.asyncio
async def test_compress_family_tool(claw3):
    family = Family.from_masks(7, [claw3.x0_bit | claw3.x_bit(2)])
    result = await server.compress_family_tool.fn(family_text=format_claw_family(claw3, family))
    assert result["kind"] == "claw"
    assert result["output"][-1] == "3,5"


@pytest.mark.asyncio
async def test_weighted_pair_maximum():
    result = await server.weighted_pair_maximum.fn(n=3, proof_r=2)
    assert result["optimum"] == 5
    assert result["star_property"] == "holds"


@pytest.mark.asyncio
async def test_weighted_pair_maximum_needs_weights():
    with pytest.raises(UsageError):
        await server.weighted_pair_maximum.fn(n=3)


@pytest.mark.asyncio
async def test_weighted_pair_from_document():
    document = json.dumps(
        {
            "a": {"n": 3, "weights": ["3", "2", "1", "0"]},
            "b": {"n": 3, "weights": ["0", "1", "0", "0"]},
        }
    )
    result = await server.weighted_pair_maximum.fn(weights_document=document)
    assert result["optimum"] == 5
    assert result["weights"]["b"] == {"n": 3, "weights": ["0", "1", "0", "0"]}


@pytest.mark.asyncio
async def test_weighted_pair_document_excludes_proof_r():
    document = "n=1\n0 1\n1 1\nn=1\n0 0\n1 1\n"
    with pytest.raises(UsageError) as excinfo:
        await server.weighted_pair_maximum.fn(weights_document=document, proof_r=1)
    assert excinfo.value.flag == "weights_document"


@pytest.mark.asyncio
async def test_weighted_pair_needs_n_or_document():
    with pytest.raises(UsageError) as excinfo:
        await server.weighted_pair_maximum.fn(proof_r=2)
    assert excinfo.value.flag == "n"


@pytest.mark.asyncio
async def test_graph_star_property_tool():
    text = "vertices=7\n2 5\n1 5\n3 6\n1 6\n4 7\n1 7\n"
    result = await server.graph_star_property.fn(graph_text=text, r=2)
    assert result["optimum"] == 5
    assert result["details"]["family_size"] == 15
    assert result["graph"][0] == "vertices=7"


@pytest.mark.asyncio
async def test_verify_suite():
    result = await server.verify_suite.fn(suite="eq1", n_max=3)
    assert result["passed"] is True
    assert result["suite"] == "eq1"


@pytest.mark.asyncio
async def test_verify_suite_unknown():
    with pytest.raises(UsageError, match="--suite"):
        await server.verify_suite.fn(suite="nope")


@pytest.mark.asyncio
async def test_list_suites():
    result = await server.list_suites.fn()
    assert [entry["suite"] for entry in result["suites"]][0] == "ekr"


@pytest.mark.asyncio
async def test_suites_resource():
    text = await server.get_suites.fn()
    assert text.startswith("suites\n")
    assert "lemma6" in text


@pytest.mark.integration
@pytest.mark.asyncio
async def test_round_trip_through_client(caplog):
    """A tool call through an in-memory client passes the logging middleware"""
    with caplog.at_level(logging.INFO):
        async with Client(mcp) as client:
            result = await client.call_tool("star_property", {"target": "knr", "n": 4, "r": 2})

    document = json.loads(result.content[0].text)
    assert document["optimum"] == 3
    assert "CLIENT_MCP → Tool call: star_property" in caplog.text
