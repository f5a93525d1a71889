"""Critical Wave Lab - main application package."""

from app.config import get_settings, settings
from app.exceptions import CriticalWaveException
from app.logging_config import get_logger, logger, setup_logging

__version__ = "0.1.0"

__all__ = [
    "settings",
    "get_settings",
    "logger",
    "get_logger",
    "setup_logging",
    "CriticalWaveException",
]
