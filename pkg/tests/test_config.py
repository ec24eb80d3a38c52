"""
Tests for configuration loading
"""

import logging

import pytest

from intersecting_lab.config import (
    DEFAULT_GUARDS,
    json_errors_enabled,
    load_lab_config,
    load_search_guards,
    log_level_value,
)


class TestLabConfig:
    """Tests for the lab configuration."""

    def test_load_default_config(self, monkeypatch):
        """Defaults apply when no override is set."""
        monkeypatch.delenv("INTERSECTING_LAB_LOG_FILE")

        config = load_lab_config()

        assert config["log_file"] == "logs/intersecting-lab.log"
        assert config["log_level"] == "INFO"
        assert config["default_seed"] == 20240601
        assert config["default_trials"] == 10_000
        assert config["guards"] == DEFAULT_GUARDS

    def test_load_config_from_env(self, monkeypatch):
        """Environment variables override the defaults."""
        monkeypatch.setenv("INTERSECTING_LAB_SEED", "7")
        monkeypatch.setenv("INTERSECTING_LAB_TRIALS", "250")
        monkeypatch.setenv("INTERSECTING_LAB_LOG_LEVEL", "debug")

        config = load_lab_config()

        assert config["default_seed"] == 7
        assert config["default_trials"] == 250
        assert config["log_level"] == "DEBUG"

    def test_negative_trials(self, monkeypatch):
        monkeypatch.setenv("INTERSECTING_LAB_TRIALS", "-1")
        with pytest.raises(ValueError, match="TRIALS"):
            load_lab_config()


class TestSearchGuards:
    """Tests for the search guards."""

    def test_override(self, monkeypatch):
        monkeypatch.setenv("INTERSECTING_LAB_MAX_MEMBERS", "800")
        monkeypatch.setenv("INTERSECTING_LAB_MU_MAX_VERTICES", "16")

        guards = load_search_guards()

        assert guards["max_members"] == 800
        assert guards["mu_max_vertices"] == 16
        assert guards["max_power_set_n"] == DEFAULT_GUARDS["max_power_set_n"]

    def test_invalid_integer_falls_back(self, monkeypatch, caplog):
        """A value that is not an integer is ignored with a warning."""
        monkeypatch.setenv("INTERSECTING_LAB_MAX_ENUMERATION", "lots")

        with caplog.at_level(logging.WARNING):
            guards = load_search_guards()

        assert guards["max_enumeration"] == DEFAULT_GUARDS["max_enumeration"]
        assert "INTERSECTING_LAB_MAX_ENUMERATION" in caplog.text

    def test_negative_guard(self, monkeypatch):
        monkeypatch.setenv("INTERSECTING_LAB_MAX_MEMBERS", "-5")
        with pytest.raises(ValueError, match="max_members"):
            load_search_guards()


class TestHelpers:
    """Tests for the small configuration helpers."""

    @pytest.mark.parametrize(
        "name,expected",
        [("DEBUG", logging.DEBUG), ("WARNING", logging.WARNING), ("CHATTY", logging.INFO)],
    )
    def test_log_level_value(self, name, expected):
        config = load_lab_config()
        config["log_level"] = name
        assert log_level_value(config) == expected

    @pytest.mark.parametrize("value,expected", [("true", True), ("1", True), ("no", False)])
    def test_json_errors_enabled(self, monkeypatch, value, expected):
        monkeypatch.setenv("INTERSECTING_LAB_JSON_ERRORS", value)
        assert json_errors_enabled() is expected

    def test_json_errors_default(self):
        assert json_errors_enabled() is False
