"""Numerical services for the critical wave application."""

from app.services.coefficients import CoefficientService, ck_fluctuation_bound
from app.services.numtheory import (
    default_zero_set,
    log_gamma_complex,
    moebius_sieve,
    zeta_complex,
    zeta_prime_at_zero,
    zeta_prime_trivial,
    zeta_real,
)
from app.services.oscillations import analyze_oscillations, envelope_trend
from app.services.parallel import BlockExecutor
from app.services.pochhammer import (
    pochhammer_bound_diagnostic,
    pochhammer_eval,
    pochhammer_sequence,
)
from app.services.precision import HighPrecisionValidator
from app.services.reciprocal import ReciprocalService, duality_transform
from app.services.sieve_cache import SieveCache
from app.services.stability import StabilityService
from app.services.wave import CriticalWaveService, composite

__all__ = [
    "moebius_sieve",
    "zeta_real",
    "zeta_complex",
    "zeta_prime_at_zero",
    "zeta_prime_trivial",
    "log_gamma_complex",
    "default_zero_set",
    "SieveCache",
    "BlockExecutor",
    "pochhammer_eval",
    "pochhammer_sequence",
    "pochhammer_bound_diagnostic",
    "CoefficientService",
    "ck_fluctuation_bound",
    "CriticalWaveService",
    "composite",
    "analyze_oscillations",
    "envelope_trend",
    "ReciprocalService",
    "duality_transform",
    "StabilityService",
    "HighPrecisionValidator",
]
