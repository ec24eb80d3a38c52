"""
MCP Request/Response Logging Middleware

Logs every client request to the lab server with the "CLIENT_MCP" prefix,
the time the search took and a one-line summary of the verdict.
"""

import json
import logging
import time
from collections.abc import Awaitable, Callable
from typing import Any

from fastmcp.server.middleware import Middleware, MiddlewareContext

logger = logging.getLogger(__name__)

# Report fields worth surfacing in the one-line summary
SUMMARY_FIELDS = ("suite", "passed", "optimum", "star_property", "size", "seed")


class MCPLoggingMiddleware(Middleware):
    """
    Middleware to log all MCP client requests and responses.

    Examples:
        # Every client interaction
        grep "CLIENT_MCP" logs/intersecting-lab.log

        # Suite runs only
        grep "CLIENT_MCP.*verify_suite" logs/intersecting-lab.log
    """

    def __init__(
        self,
        log_request_params: bool = True,
        log_response_data: bool = False,
        max_log_length: int = 5000,
    ):
        """
        Initialize the logging middleware.

        Args:
            log_request_params: Log tool arguments (default: True)
            log_response_data: Log full reports (default: False; witnesses and
                suite tables can be long)
            max_log_length: Maximum length for logged data before truncation (default: 5000)
        """
        self.log_request_params = log_request_params
        self.log_response_data = log_response_data
        self.max_log_length = max_log_length

    async def _timed(
        self,
        label: str,
        context: MiddlewareContext,
        call_next: Callable[[MiddlewareContext], Awaitable[Any]],
    ) -> tuple[Any, float]:
        start_time = time.perf_counter()
        try:
            result = await call_next(context)
        except Exception as e:
            duration = (time.perf_counter() - start_time) * 1000
            logger.error(f"CLIENT_MCP ✗ {label} ({duration:.2f}ms) - {type(e).__name__}: {e}")
            raise
        return result, (time.perf_counter() - start_time) * 1000

    async def on_call_tool(self, context: MiddlewareContext, call_next):
        """Log tool calls with their arguments and a verdict summary"""
        tool_name = getattr(context.message, "name", "unknown")
        arguments = getattr(context.message, "arguments", {}) or {}

        logger.info(f"CLIENT_MCP → Tool call: {tool_name}")
        if self.log_request_params:
            shown = self._truncate_data(arguments, self.max_log_length) if arguments else "(none)"
            logger.info(f"CLIENT_MCP   Tool '{tool_name}' arguments: {shown}")

        result, duration = await self._timed(f"Tool error: {tool_name}", context, call_next)
        logger.info(f"CLIENT_MCP ← Tool result: {tool_name} ({duration:.2f}ms)")
        summary = self._summarize(result)
        if summary:
            logger.info(f"CLIENT_MCP   Tool '{tool_name}' summary: {summary}")
        if self.log_response_data:
            truncated = self._truncate_data(result, self.max_log_length)
            logger.info(f"CLIENT_MCP   Tool '{tool_name}' result: {truncated}")
        return result

    async def on_read_resource(self, context: MiddlewareContext, call_next):
        """Log resource reads"""
        uri = str(getattr(context.message, "uri", "unknown"))
        logger.info(f"CLIENT_MCP → Resource read: {uri}")
        result, duration = await self._timed(f"Resource error: {uri}", context, call_next)
        logger.info(f"CLIENT_MCP ← Resource result: {uri} ({duration:.2f}ms)")
        return result

    async def on_list_tools(self, context: MiddlewareContext, call_next):
        """Log tool list requests"""
        logger.info("CLIENT_MCP → List tools")
        result, duration = await self._timed("List tools error:", context, call_next)
        # result is a Sequence[Tool]
        count = len(result or [])
        logger.info(f"CLIENT_MCP ← List tools result: {count} tools ({duration:.2f}ms)")
        return result

    async def on_list_resources(self, context: MiddlewareContext, call_next):
        """Log resource list requests"""
        logger.info("CLIENT_MCP → List resources")
        result, duration = await self._timed("List resources error:", context, call_next)
        logger.info(
            f"CLIENT_MCP ← List resources result: {len(result or [])} resources "
            f"({duration:.2f}ms)"
        )
        return result

    async def on_initialize(self, context: MiddlewareContext, call_next):
        """Log client name, version and protocol on initialization"""
        params = getattr(context.message, "params", None)
        client_info = getattr(params, "clientInfo", None)
        client_name = getattr(client_info, "name", "unknown")
        client_version = getattr(client_info, "version", "unknown")
        protocol_version = getattr(params, "protocolVersion", "unknown")

        logger.info(
            f"CLIENT_MCP → Initialize: {client_name} "
            f"v{client_version} (protocol: {protocol_version})"
        )
        result, _ = await self._timed("Initialize error:", context, call_next)
        logger.info("CLIENT_MCP ← Initialize complete")
        return result

    def _summarize(self, result: Any) -> str:
        """Pick the verdict fields out of a report, whatever wraps it"""
        payload = getattr(result, "structured_content", None)
        if payload is None and isinstance(result, dict):
            payload = result
        if not isinstance(payload, dict):
            return ""
        if "result" in payload and isinstance(payload["result"], dict):
            payload = payload["result"]
        fields = {key: payload[key] for key in SUMMARY_FIELDS if key in payload}
        return " ".join(f"{key}={value}" for key, value in fields.items())

    def _truncate_data(self, data: Any, max_length: int) -> str:
        """
        Truncate data for logging.

        Args:
            data: Data to truncate
            max_length: Maximum string length

        Returns:
            Truncated string representation
        """
        try:
            text = json.dumps(data, default=str)
        except Exception:
            text = str(data)
        if len(text) > max_length:
            return text[:max_length] + f"... ({len(text)} chars total)"
        return text
