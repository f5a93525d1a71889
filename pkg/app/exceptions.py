"""Custom exceptions for the critical wave application"""

from pathlib import Path
from typing import Optional, Union


class CriticalWaveException(Exception):
    """Base exception for the critical wave application"""

    def __init__(self, message: str, code: str = "UNKNOWN_ERROR"):
        self.message = message
        self.code = code
        super().__init__(self.message)


class ConfigurationError(CriticalWaveException):
    """Exception raised for configuration errors"""

    def __init__(self, message: str, key: Optional[str] = None):
        self.key = key
        super().__init__(message, "CONFIGURATION_ERROR")


class ValidationError(CriticalWaveException):
    """Exception raised when an argument violates a precondition"""

    def __init__(self, message: str, field: Optional[str] = None):
        self.field = field
        super().__init__(message, "VALIDATION_ERROR")


class DomainError(CriticalWaveException):
    """Exception raised for arguments at a pole or outside the analytic domain"""

    def __init__(self, message: str, point: Optional[complex] = None):
        self.point = point
        super().__init__(message, "DOMAIN_ERROR")


class TrivialZeroPole(CriticalWaveException):
    """Raised when the duality relation lands on a trivial zero of zeta(1 - s).

    The reciprocal 1/zeta(1 - s) has a pole there, signalled by the pole of
    Gamma((1 - s)/2) at s = 3, 5, 7, ...
    """

    def __init__(self, s: complex):
        self.s = s
        self.zero = 1 - s
        super().__init__(
            f"zeta(1 - s) vanishes at 1 - s = {self.zero.real:g} "
            f"(trivial zero); 1/zeta(1 - s) has a pole",
            code="TRIVIAL_ZERO",
        )


class ConvergenceError(CriticalWaveException):
    """Exception raised when a numerical procedure does not converge"""

    def __init__(self, message: str, reason: Optional[str] = None):
        self.reason = reason
        super().__init__(message, "CONVERGENCE_ERROR")


class SieveCacheError(CriticalWaveException):
    """Exception raised for sieve cache read/write failures"""

    def __init__(self, message: str, path: Optional[Union[str, Path]] = None):
        self.path = path
        super().__init__(message, "CACHE_ERROR")


class OutputError(CriticalWaveException):
    """Exception raised when report or figure files cannot be written"""

    def __init__(self, message: str, path: Optional[Union[str, Path]] = None):
        self.path = path
        super().__init__(message, "OUTPUT_ERROR")


__all__ = [
    "CriticalWaveException",
    "ConfigurationError",
    "ValidationError",
    "DomainError",
    "TrivialZeroPole",
    "ConvergenceError",
    "SieveCacheError",
    "OutputError",
]
