"""Tests for MCPLoggingMiddleware"""

import logging
from unittest.mock import AsyncMock, MagicMock

import pytest

from intersecting_lab.middleware.mcp_logging import MCPLoggingMiddleware


class TestMCPLoggingMiddleware:
    """Tests for the MCPLoggingMiddleware class"""

    @pytest.fixture
    def middleware_default(self):
        """Create middleware with default settings"""
        return MCPLoggingMiddleware()

    @pytest.fixture
    def middleware_full_logging(self):
        """Create middleware with full logging enabled"""
        return MCPLoggingMiddleware(
            log_request_params=True, log_response_data=True, max_log_length=10000
        )

    @pytest.fixture
    def mock_context(self):
        """Create a mock MiddlewareContext"""
        context = MagicMock()
        context.message = MagicMock()
        context.message.name = "star_property"
        context.message.arguments = {"target": "itn", "n": 3, "r": 3}
        return context

    @pytest.fixture
    def mock_call_next(self):
        """Create a mock call_next returning a verdict document"""
        return AsyncMock(
            return_value={
                "optimum": 7,
                "star_property": "fails",
                "witness": ["n=7", "2,3,4"],
                "seed": None,
            }
        )

    def test_init_default(self, middleware_default):
        """Test middleware initialization with defaults"""
        assert middleware_default.log_request_params is True
        assert middleware_default.log_response_data is False
        assert middleware_default.max_log_length == 5000

    @pytest.mark.asyncio
    async def test_on_call_tool_logs_request(
        self, middleware_full_logging, mock_context, mock_call_next, caplog
    ):
        """Test that tool calls log their arguments"""
        with caplog.at_level(logging.INFO):
            result = await middleware_full_logging.on_call_tool(mock_context, mock_call_next)

        assert result["optimum"] == 7
        assert "CLIENT_MCP → Tool call: star_property" in caplog.text
        assert "CLIENT_MCP   Tool 'star_property' arguments:" in caplog.text
        assert '"target": "itn"' in caplog.text

    @pytest.mark.asyncio
    async def test_on_call_tool_logs_summary(
        self, middleware_default, mock_context, mock_call_next, caplog
    ):
        """Test that the verdict summary is logged even without response data"""
        with caplog.at_level(logging.INFO):
            await middleware_default.on_call_tool(mock_context, mock_call_next)

        assert "summary: optimum=7 star_property=fails seed=None" in caplog.text
        assert "CLIENT_MCP   Tool 'star_property' result:" not in caplog.text
        assert "2,3,4" not in caplog.text

    @pytest.mark.asyncio
    async def test_on_call_tool_logs_response(
        self, middleware_full_logging, mock_context, mock_call_next, caplog
    ):
        """Test that full reports are logged when enabled"""
        with caplog.at_level(logging.INFO):
            await middleware_full_logging.on_call_tool(mock_context, mock_call_next)

        assert "CLIENT_MCP ← Tool result: star_property" in caplog.text
        assert "ms)" in caplog.text
        assert "CLIENT_MCP   Tool 'star_property' result:" in caplog.text
        assert "2,3,4" in caplog.text

    @pytest.mark.asyncio
    async def test_on_call_tool_without_arguments(
        self, middleware_default, mock_context, mock_call_next, caplog
    ):
        mock_context.message.name = "list_suites"
        mock_context.message.arguments = None
        with caplog.at_level(logging.INFO):
            await middleware_default.on_call_tool(mock_context, mock_call_next)

        assert "Tool 'list_suites' arguments: (none)" in caplog.text

    @pytest.mark.asyncio
    async def test_on_call_tool_logs_errors(self, middleware_full_logging, mock_context, caplog):
        """Test that tool errors are logged and re-raised"""
        failing = AsyncMock(side_effect=ValueError("Family too large"))

        with caplog.at_level(logging.ERROR):
            with pytest.raises(ValueError):
                await middleware_full_logging.on_call_tool(mock_context, failing)

        assert "CLIENT_MCP ✗ Tool error: star_property" in caplog.text
        assert "ValueError: Family too large" in caplog.text

    def test_summarize_structured_content(self, middleware_default):
        """Structured tool results wrap the report under "result" for non-dict returns"""
        result = MagicMock()
        result.structured_content = {"result": {"suite": "ekr", "passed": True}}
        assert middleware_default._summarize(result) == "suite=ekr passed=True"

    def test_summarize_other_values(self, middleware_default):
        assert middleware_default._summarize([1, 2]) == ""

    def test_truncate_data_small(self, middleware_full_logging):
        """Test that small data is not truncated"""
        result = middleware_full_logging._truncate_data({"key": "value"}, max_length=100)
        assert '"key": "value"' in result
        assert "..." not in result

    def test_truncate_data_large(self, middleware_full_logging):
        """Test that large data is truncated"""
        result = middleware_full_logging._truncate_data({"key": "x" * 10000}, max_length=100)
        assert len(result) <= 150
        assert "chars total" in result

    @pytest.mark.asyncio
    async def test_on_read_resource(
        self, middleware_full_logging, mock_context, mock_call_next, caplog
    ):
        """Test resource read logging"""
        mock_context.message.uri = "intersecting-lab://suites"

        with caplog.at_level(logging.INFO):
            await middleware_full_logging.on_read_resource(mock_context, mock_call_next)

        assert "CLIENT_MCP → Resource read: intersecting-lab://suites" in caplog.text
        assert "CLIENT_MCP ← Resource result: intersecting-lab://suites" in caplog.text

    @pytest.mark.asyncio
    async def test_on_list_tools(self, middleware_default, mock_context, caplog):
        call_next = AsyncMock(return_value=["a", "b", "c"])
        with caplog.at_level(logging.INFO):
            await middleware_default.on_list_tools(mock_context, call_next)

        assert "CLIENT_MCP ← List tools result: 3 tools" in caplog.text

    @pytest.mark.asyncio
    async def test_on_initialize(
        self, middleware_full_logging, mock_context, mock_call_next, caplog
    ):
        """Test initialization logging"""
        mock_context.message.params = MagicMock()
        mock_context.message.params.clientInfo = MagicMock()
        mock_context.message.params.clientInfo.name = "lab-notebook"
        mock_context.message.params.clientInfo.version = "1.0.0"
        mock_context.message.params.protocolVersion = "2024-11-05"

        with caplog.at_level(logging.INFO):
            await middleware_full_logging.on_initialize(mock_context, mock_call_next)

        assert "CLIENT_MCP → Initialize: lab-notebook v1.0.0" in caplog.text
        assert "protocol: 2024-11-05" in caplog.text
        assert "CLIENT_MCP ← Initialize complete" in caplog.text
