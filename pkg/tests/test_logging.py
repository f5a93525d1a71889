"""Tests for the application logger hierarchy."""

import json
import logging

import pytest

from app.exceptions import ConfigurationError
from app.logging_config import (
    LOGGER_NAME,
    get_logger,
    parse_module_levels,
    setup_logging,
)


@pytest.fixture
def log_file(tmp_path):
    """Log file for one test; the default setup is restored afterwards."""
    yield tmp_path / "wave.log"
    setup_logging()


class TestModuleLevels:
    """Test APP_LOG_LEVELS parsing."""

    def test_parse(self):
        """Test pairs, whitespace and level names."""
        levels = parse_module_levels(
            "app.services.precision=DEBUG, cli = warning"
        )
        assert levels == {
            "app.services.precision": logging.DEBUG,
            "cli": logging.WARNING,
        }

    def test_empty(self):
        """Test an empty setting configures nothing."""
        assert parse_module_levels("") == {}

    @pytest.mark.parametrize("text", ["cli", "=DEBUG", "cli=LOUD"])
    def test_invalid(self, text):
        """Test malformed pairs and unknown levels."""
        with pytest.raises(ConfigurationError):
            parse_module_levels(text)


class TestLoggerHierarchy:
    """Test module loggers hang off the application root."""

    def test_module_logger_name(self):
        """Test __name__ is placed under the root."""
        logger = get_logger("app.services.wave")
        assert logger.name == f"{LOGGER_NAME}.app.services.wave"
        assert logger.parent.name.startswith(LOGGER_NAME)

    def test_root_name_kept(self):
        """Test names already under the root are not prefixed twice."""
        assert get_logger(LOGGER_NAME).name == LOGGER_NAME

    def test_module_level_override(self, log_file):
        """Test a per-module level filters one package only."""
        setup_logging(
            level="INFO",
            log_file=log_file,
            module_levels={"app.services.precision": logging.ERROR},
        )
        get_logger("app.services.precision").warning("hidden")
        get_logger("app.services.wave").warning("shown")
        for handler in logging.getLogger(LOGGER_NAME).handlers:
            handler.flush()
        text = log_file.read_text(encoding="utf-8")
        assert "shown" in text
        assert "hidden" not in text

    def test_json_records(self, log_file):
        """Test JSON output carries the module logger name."""
        setup_logging(level="INFO", log_file=log_file, use_json=True)
        get_logger("cli.main").info("started")
        for handler in logging.getLogger(LOGGER_NAME).handlers:
            handler.flush()
        record = json.loads(log_file.read_text(encoding="utf-8").splitlines()[-1])
        assert record["name"] == f"{LOGGER_NAME}.cli.main"
        assert record["message"] == "started"

    def test_unknown_root_level(self, log_file):
        """Test an unknown root level is a configuration error."""
        with pytest.raises(ConfigurationError):
            setup_logging(level="LOUD", log_file=log_file)
