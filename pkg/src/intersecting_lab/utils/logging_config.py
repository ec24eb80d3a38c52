"""
File-only logging for intersecting-lab.

Standard output belongs to reports (CLI) or to JSON-RPC (MCP server), so the
only handler ever installed is a file handler.
"""

import functools
import json
import logging
from pathlib import Path
from typing import Any, Callable, Mapping, TypeVar

DEFAULT_LOG_FILE = "logs/intersecting-lab.log"
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
ROOT_LOGGER = "intersecting_lab"

F = TypeVar("F", bound=Callable[..., Any])


def setup_file_logging(
    log_file: str | Path = DEFAULT_LOG_FILE,
    level: int = logging.INFO,
    format_string: str = LOG_FORMAT,
) -> logging.Logger:
    """
    Route all logging to ``log_file``, replacing any handlers already set.

    Args:
        log_file: Destination; missing parent directories are created
        level: Root level
        format_string: Record format

    Returns:
        The root logger
    """
    path = Path(log_file)
    path.parent.mkdir(parents=True, exist_ok=True)

    handler = logging.FileHandler(path, encoding="utf-8")
    handler.setFormatter(logging.Formatter(format_string))
    logging.basicConfig(level=level, handlers=[handler], force=True)

    root = logging.getLogger()
    root.info(f"Logging to {path} at {logging.getLevelName(level)}")
    return root


def get_logger(name: str) -> logging.Logger:
    """Logger under the package namespace; ``__main__`` maps to the root package logger."""
    if name == "__main__" or not name:
        return logging.getLogger(ROOT_LOGGER)
    if name == ROOT_LOGGER or name.startswith(ROOT_LOGGER + "."):
        return logging.getLogger(name)
    return logging.getLogger(f"{ROOT_LOGGER}.{name}")


def _flatten(data: Mapping[str, Any], prefix: str = "") -> list[tuple[str, Any]]:
    items: list[tuple[str, Any]] = []
    for key, value in data.items():
        dotted = f"{prefix}{key}"
        if isinstance(value, Mapping):
            items.extend(_flatten(value, dotted + "."))
        else:
            items.append((dotted, value))
    return items


def log_dict(
    logger: logging.Logger, message: str, data: Mapping[str, Any], level: int = logging.INFO
) -> None:
    """
    Log ``message`` followed by one ``key: value`` line per entry.

    Nested mappings (the search guards inside the lab configuration) are
    flattened to dotted keys at any depth.
    """
    logger.log(level, message)
    for key, value in _flatten(data):
        logger.log(level, f"  {key}: {value}")


def _failed(result: Any) -> bool:
    # Suites report "passed"; weighted verdicts keep proof checks under "details".
    if not isinstance(result, dict):
        return False
    if result.get("passed") is False:
        return True
    details = result.get("details")
    if not isinstance(details, dict):
        return False
    reduction = details.get("b_reduction")
    return bool(details.get("trace_failures")) or (
        isinstance(reduction, dict) and reduction.get("passed") is False
    )


def log_tool_result(logger: logging.Logger | None = None) -> Callable[[F], F]:
    """
    Log the report an async MCP tool returns as ``TOOL_RESULT [tool]``.

    Reports that record a failed claim or proof step are logged at WARNING,
    everything else at INFO. Values JSON cannot encode (Fractions) are
    written with ``str``.
    """

    def decorator(func: F) -> F:
        target = logger or get_logger(func.__module__)

        @functools.wraps(func)
        async def wrapper(*args: Any, **kwargs: Any) -> Any:
            result = await func(*args, **kwargs)
            level = logging.WARNING if _failed(result) else logging.INFO
            try:
                body = json.dumps(result, default=str, indent=2)
            except (TypeError, ValueError) as e:
                target.warning(f"TOOL_RESULT [{func.__name__}] not JSON encodable: {e}")
                body = repr(result)
            target.log(level, f"TOOL_RESULT [{func.__name__}]:\n{body}")
            return result

        return wrapper  # type: ignore[return-value]

    return decorator
