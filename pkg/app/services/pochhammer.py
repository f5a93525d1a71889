"""Pochhammer polynomials P_k(z) = prod_{r<=k} (1 - z/r) for large k."""

import cmath
import math
from typing import Iterable, Tuple

import numpy as np
from scipy import special

from app.logging_config import get_logger
from app.models import BoundDiagnostic, PochhammerQuery, PochhammerValue
from app.validators import Validator

logger = get_logger(__name__)

# Direct products are used up to this k; beyond it the Gamma-ratio form
DIRECT_PRODUCT_LIMIT = 100_000

_STIRLING_MIN_N = 50.0
_SERIES_RADIUS = 0.01


def _log1p_series(u: complex) -> Tuple[complex, complex]:
    """(log(1 + u), log(1 + u) - u) for |u| < 0.01, summed separately."""
    excess = 0j
    power = u * u
    for m in range(2, 14):
        excess += (-1) ** (m + 1) * power / m
        power *= u
    return u + excess, excess


def _stirling_remainder(w: complex) -> complex:
    w2 = w * w
    return (
        1 / (12 * w)
        - 1 / (360 * w * w2)
        + 1 / (1260 * w * w2 * w2)
        - 1 / (1680 * w * w2 * w2 * w2)
    )


def log_gamma_ratio(n: float, a: complex) -> complex:
    """
    log Gamma(n + a) - log Gamma(n) for real n > 0.

    For n >= 50 and |a| <= n/2 the Stirling difference is used, which
    avoids cancelling two huge log Gamma values when n ~ 1e13.

    Args:
        n: Real base argument
        a: Complex shift

    Returns:
        The log ratio (principal branch continuation)
    """
    a = complex(a)
    if n >= _STIRLING_MIN_N and abs(a) <= 0.5 * n:
        u = a / n
        if abs(u) < _SERIES_RADIUS:
            log1p_u, excess = _log1p_series(u)
        else:
            log1p_u = cmath.log(1 + u)
            excess = log1p_u - u
        return (
            a * math.log(n)
            + n * excess
            + (a - 0.5) * log1p_u
            + _stirling_remainder(n + a)
            - _stirling_remainder(complex(n))
        )
    return complex(special.loggamma(n + a)) - float(special.gammaln(n))


def _is_positive_integer(z: complex) -> bool:
    return z.imag == 0 and z.real >= 1 and z.real == math.floor(z.real)


def _direct(k: int, z: complex, path: str = "direct") -> PochhammerValue:
    if k == 0:
        return PochhammerValue(0.0, 0.0, False, path)
    r = np.arange(1, k + 1, dtype=np.float64)
    factors = 1 - z / r
    if np.any(factors == 0):
        return PochhammerValue.zero(path)
    logs = np.log(factors.astype(np.complex128))
    return PochhammerValue(
        math.fsum(logs.real), math.fsum(logs.imag), False, path
    )


def _gamma_ratio(k: int, z: complex) -> PochhammerValue:
    log_value = log_gamma_ratio(k + 1, -z) - complex(
        special.loggamma(1 - z)
    )
    return PochhammerValue(
        log_value.real, log_value.imag, False, "gamma_ratio"
    )


def pochhammer_log(
    k: int, z_prime: complex, force_path: str = ""
) -> PochhammerValue:
    """
    P_k(z') as log-modulus and phase.

    Args:
        k: Degree (>= 0)
        z_prime: Argument of the classical polynomial
        force_path: "direct" or "gamma_ratio" to override the k threshold

    Returns:
        PochhammerValue
    """
    k = Validator.validate_positive_int(k, "k", minimum=0)
    z = complex(z_prime)
    if _is_positive_integer(z):
        # Gamma(1 - z') sits on a pole; the product is finite
        if k >= z.real:
            return PochhammerValue.zero("direct_fallback")
        logger.debug(f"Gamma pole at z'={z.real:g}; direct product for k={k}")
        return _direct(k, z, "direct_fallback")
    if force_path == "direct" or (
        not force_path and k <= DIRECT_PRODUCT_LIMIT
    ):
        return _direct(k, z)
    return _gamma_ratio(k, z)


def pochhammer_eval(query: PochhammerQuery) -> complex:
    """P_k(s, alpha, beta) for the given query."""
    return pochhammer_log(query.k, query.z_prime).value


def pochhammer_sequence(z_prime: complex, k_max: int) -> np.ndarray:
    """
    P_0..P_{k_max} by the recurrence P_{k+1} = P_k (1 - z'/(k+1)).

    Returns:
        Complex array of length k_max + 1
    """
    k_max = Validator.validate_positive_int(k_max, "k_max", minimum=0)
    out = np.empty(k_max + 1, dtype=np.complex128)
    out[0] = 1.0
    if k_max:
        r = np.arange(1, k_max + 1, dtype=np.float64)
        out[1:] = np.cumprod(1 - complex(z_prime) / r)
    return out


def pochhammer_bound_diagnostic(
    s: complex,
    alpha: float,
    beta: float,
    k_grid: Iterable[int],
    growth_tolerance: float = 0.05,
) -> BoundDiagnostic:
    """
    Scaled sequence |P_k| k^{Re z'} over a k-grid.

    The sequence is called bounded unless the maximum over the last decade
    of the grid exceeds the earlier maximum by more than growth_tolerance.

    Args:
        s: Point s
        alpha: Weight exponent
        beta: Scale (> 0)
        k_grid: Nonempty list of k >= 1
        growth_tolerance: Relative slack on the last-decade maximum

    Returns:
        BoundDiagnostic with rows (k, scaled value) and the verdict
    """
    beta = Validator.validate_beta(beta)
    ks = sorted(Validator.validate_k_grid(k_grid))
    z = (complex(s) - alpha) / beta + 1
    rows = []
    for k in ks:
        value = pochhammer_log(k, z)
        if value.is_zero:
            scaled = 0.0
        else:
            scaled = math.exp(value.log_modulus + z.real * math.log(k))
        rows.append((k, scaled))

    cutoff = ks[-1] / 10
    last = [v for k, v in rows if k > cutoff]
    prior = [v for k, v in rows if k <= cutoff]
    last_max = max(last)
    prior_max = max(prior) if prior else last_max
    bounded = last_max <= prior_max * (1 + growth_tolerance)
    supremum = max(v for _, v in rows)
    logger.info(
        f"Pochhammer bound diagnostic z'={z}: sup={supremum:.6g}, "
        f"bounded={bounded}"
    )
    return BoundDiagnostic(
        z_prime=z,
        rows=rows,
        supremum=supremum,
        last_decade_max=last_max,
        prior_max=prior_max,
        bounded=bounded,
    )


__all__ = [
    "DIRECT_PRODUCT_LIMIT",
    "log_gamma_ratio",
    "pochhammer_log",
    "pochhammer_eval",
    "pochhammer_sequence",
    "pochhammer_bound_diagnostic",
]
