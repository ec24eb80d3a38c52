"""
Pytest Configuration and Fixtures

This module provides shared fixtures for all tests.
"""

import os
import tempfile
from pathlib import Path

import pytest

# server.py configures logging at import time, before any fixture runs
os.environ.setdefault(
    "INTERSECTING_LAB_LOG_FILE", str(Path(tempfile.gettempdir()) / "intersecting-lab-tests.log")
)

from intersecting_lab.families.claw import ClawLayout  # noqa: E402
from intersecting_lab.families.labeled import LabeledUniverse  # noqa: E402
from intersecting_lab.families.sets import Family  # noqa: E402


@pytest.fixture(autouse=True)
def isolated_environment(monkeypatch, tmp_path):
    """Send log output to a temporary file and clear lab overrides."""
    for key in list(os.environ):
        if key.startswith("INTERSECTING_LAB_"):
            monkeypatch.delenv(key)
    monkeypatch.setenv("INTERSECTING_LAB_LOG_FILE", str(tmp_path / "logs" / "lab.log"))


@pytest.fixture
def claw3() -> ClawLayout:
    """Layout of T_3: x0=1, x1..x3=2..4, y1..y3=5..7."""
    return ClawLayout(3)


@pytest.fixture
def universe22() -> LabeledUniverse:
    return LabeledUniverse(2, 2)


@pytest.fixture
def triangle_family() -> Family:
    """{1,2}, {1,3}, {2,3} over [3]."""
    return Family.from_sets(3, [[1, 2], [1, 3], [2, 3]])


@pytest.fixture
def write_file(tmp_path):
    """Write text to a file under tmp_path and return its path."""

    def _write(name: str, text: str) -> Path:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return _write
