"""Custom exceptions for intersecting-lab."""

from typing import Any


class LabError(Exception):
    """Base exception for intersecting-lab."""

    pass


class DomainError(LabError, ValueError):
    """An argument lies outside the domain of an operation."""

    pass


class SizeLimitError(LabError):
    """A blowup guard refused to build or search an instance."""

    def __init__(self, message: str, limit: int | None = None, requested: int | None = None):
        self.message = message
        self.limit = limit
        self.requested = requested

        details = []
        if requested is not None:
            details.append(f"requested {requested}")
        if limit is not None:
            details.append(f"limit {limit}")

        detail_str = ", ".join(details)
        super().__init__(f"{message} ({detail_str})" if detail_str else message)


class FormatError(LabError):
    """Error while parsing one of the text formats."""

    def __init__(self, message: str, line: int | None = None):
        self.message = message
        self.line = line
        super().__init__(f"{message} (line {line})" if line is not None else message)


class UsageError(LabError):
    """Invalid combination of command-line flags."""

    def __init__(self, message: str, flag: str | None = None):
        self.message = message
        self.flag = flag
        super().__init__(f"{flag}: {message}" if flag else message)


class FalsifiedClaimError(LabError):
    """A theorem-suite assertion failed on a concrete instance."""

    def __init__(self, suite: str, message: str, witness: Any = None):
        self.suite = suite
        self.message = message
        self.witness = witness
        super().__init__(f"suite '{suite}' falsified: {message}")
