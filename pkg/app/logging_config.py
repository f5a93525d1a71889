"""Logging for the critical wave application.

Every module logs through ``get_logger(__name__)``, which places it under
the ``critical_wave`` root (``critical_wave.app.services.wave``,
``critical_wave.cli.main``, ...). Handlers live on the root only; levels
can be raised or lowered per package.
"""

import logging
import logging.handlers
import sys
from pathlib import Path
from typing import Dict, Mapping, Optional

from pythonjsonlogger import jsonlogger

from app.config import settings
from app.exceptions import ConfigurationError

LOGGER_NAME = "critical_wave"
LOG_FILE_NAME = "wave.log"

_TEXT_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
_JSON_FORMAT = "%(asctime)s %(name)s %(module)s %(levelname)s %(message)s"
_DATE_FORMAT = "%Y-%m-%d %H:%M:%S"


def _level(name: str) -> int:
    level = logging.getLevelName(name.strip().upper())
    if not isinstance(level, int):
        raise ConfigurationError(f"unknown log level '{name}'", key="level")
    return level


def parse_module_levels(text: str) -> Dict[str, int]:
    """
    Parse "module=LEVEL" pairs separated by commas.

    Raises:
        ConfigurationError: For malformed pairs or unknown levels
    """
    levels: Dict[str, int] = {}
    for pair in filter(None, (p.strip() for p in text.split(","))):
        module, sep, level = pair.partition("=")
        if not sep or not module.strip():
            raise ConfigurationError(
                f"expected module=LEVEL, got {pair!r}", key="app_log_levels"
            )
        levels[module.strip()] = _level(level)
    return levels


def get_logger(name: str) -> logging.Logger:
    """Child of the application logger for a dotted module name."""
    if name == LOGGER_NAME or name.startswith(LOGGER_NAME + "."):
        return logging.getLogger(name)
    return logging.getLogger(f"{LOGGER_NAME}.{name}")


def setup_logging(
    level: Optional[str] = None,
    log_file: Optional[Path] = None,
    use_json: Optional[bool] = None,
    module_levels: Optional[Mapping[str, int]] = None,
) -> logging.Logger:
    """
    Configure the application logger hierarchy.

    Console output goes to stderr so command results on stdout stay clean.

    Args:
        level: Root level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        log_file: Rotating log file (logs_dir/wave.log by default)
        use_json: JSON records (defaults to APP_LOG_JSON)
        module_levels: Per-module levels (defaults to APP_LOG_LEVELS)

    Returns:
        The root application logger
    """
    root_level = _level(level or settings.app_log_level)
    if use_json is None:
        use_json = settings.app_log_json
    if module_levels is None:
        module_levels = parse_module_levels(settings.app_log_levels)

    root = logging.getLogger(LOGGER_NAME)
    root.setLevel(root_level)
    root.propagate = False
    for handler in root.handlers:
        handler.close()
    root.handlers.clear()

    if use_json:
        formatter: logging.Formatter = jsonlogger.JsonFormatter(
            fmt=_JSON_FORMAT, datefmt=_DATE_FORMAT
        )
    else:
        formatter = logging.Formatter(fmt=_TEXT_FORMAT, datefmt=_DATE_FORMAT)

    console = logging.StreamHandler(sys.stderr)
    console.setFormatter(formatter)
    root.addHandler(console)

    log_file = log_file or settings.logs_dir / LOG_FILE_NAME
    try:
        log_file.parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.handlers.RotatingFileHandler(
            log_file,
            maxBytes=10 * 1024 * 1024,  # 10MB
            backupCount=5,
        )
        file_handler.setFormatter(formatter)
        root.addHandler(file_handler)
    except OSError as e:
        root.error(f"Could not create log file {log_file}: {e}")

    for name, existing in list(logging.Logger.manager.loggerDict.items()):
        if name.startswith(LOGGER_NAME + ".") and isinstance(
            existing, logging.Logger
        ):
            existing.setLevel(logging.NOTSET)
    for module, module_level in module_levels.items():
        get_logger(module).setLevel(module_level)

    return root


logger = setup_logging()

__all__ = [
    "LOGGER_NAME",
    "parse_module_levels",
    "get_logger",
    "setup_logging",
    "logger",
]
