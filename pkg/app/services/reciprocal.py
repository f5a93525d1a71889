"""Reconstruction of 1/zeta(s) from sum_k c_k P_k(s) and the duality map."""

import cmath
import math
from typing import List, Tuple

import numpy as np

from app.exceptions import DomainError, TrivialZeroPole
from app.logging_config import get_logger
from app.models import ReciprocalQuery, ReciprocalResult
from app.services.coefficients import CoefficientService
from app.services.numtheory import log_gamma_complex

logger = get_logger(__name__)

# Two successive decades with max |c_k P_k| below this stop the expansion
EARLY_STOP_THRESHOLD = 1e-12
_BLOCK = 1000
# 1/zeta(0)
_RECIPROCAL_AT_ZERO = -2.0


def _decade_bounds(k_max: int) -> List[Tuple[int, int]]:
    """[0, 10), [10, 100), ... clipped to k_max, as (start, stop)."""
    bounds = []
    start, stop = 0, 10
    while start <= k_max:
        end = min(stop, k_max + 1)
        bounds.append((start, end))
        start, stop = end, stop * 10
    return bounds


class ReciprocalService:
    """Partial sums of the Pochhammer expansion of 1/zeta(s)."""

    def __init__(self, coefficients: CoefficientService):
        """
        Initialize service.

        Args:
            coefficients: Coefficient service over a shared Moebius table
        """
        self.coefficients = coefficients

    def expansion_limit(self, query: ReciprocalQuery) -> complex:
        """
        Value the expansion tends to as k_max grows, at fixed N.

        sum_k (1 - n^-beta)^k P_k(z') = n^{beta (1 - z')}, so the full sum
        over k collapses to sum_{n<=N} mu(n) n^-s.
        """
        n, mu = self.coefficients.table.squarefree_support(query.truncation)
        terms = mu * np.exp(-query.s * np.log(n.astype(np.float64)))
        return complex(math.fsum(terms.real), math.fsum(terms.imag))

    def reciprocal_zeta_partial(
        self, query: ReciprocalQuery
    ) -> ReciprocalResult:
        """
        Running sums sum_{k<=K} c_k P_k(s) for K = 0..k_max.

        c_k is taken in exact form truncated at N; P_k by the product
        recurrence. The expansion stops early once two successive decades
        have max |increment| < 1e-12.

        Args:
            query: ReciprocalQuery

        Returns:
            ReciprocalResult
        """
        notes = []
        if not query.validity_claimed:
            message = (
                f"Re(s) = {query.s_real} <= 1/2: expansion not claimed to "
                f"represent 1/zeta(s)"
            )
            logger.warning(message)
            notes.append(message)

        z = query.z_prime
        increments: List[np.ndarray] = []
        p_last = 1.0 + 0j
        quiet_decades = 0
        stopped_early = False

        for start, stop in _decade_bounds(query.k_max):
            decade = []
            for lo in range(start, stop, _BLOCK):
                hi = min(lo + _BLOCK, stop)
                ks = np.arange(lo, hi)
                c = self.coefficients.exact_block(
                    ks, query.alpha, query.beta, query.truncation
                )
                factors = np.ones(hi - lo, dtype=np.complex128)
                positive = ks > 0
                factors[positive] = 1 - z / ks[positive]
                p = p_last * np.cumprod(factors)
                p_last = complex(p[-1])
                decade.append(c * p)
            decade_increments = np.concatenate(decade)
            increments.append(decade_increments)

            if np.max(np.abs(decade_increments)) < EARLY_STOP_THRESHOLD:
                quiet_decades += 1
            else:
                quiet_decades = 0
            if quiet_decades >= 2 and stop <= query.k_max:
                stopped_early = True
                logger.info(
                    f"Reciprocal expansion at s={query.s} stopped early "
                    f"at K={stop - 1}"
                )
                break

        all_increments = np.concatenate(increments)
        partial_sums = np.cumsum(all_increments)
        logger.info(
            f"Reciprocal expansion at s={query.s}: K={partial_sums.size - 1}, "
            f"final={complex(partial_sums[-1])}"
        )
        return ReciprocalResult(
            s=query.s,
            partial_sums=partial_sums,
            increments=all_increments,
            stopped_early=stopped_early,
            validity_claimed=query.validity_claimed,
            notes=notes,
            limit=self.expansion_limit(query),
        )


def duality_transform(s: complex, recip_s: complex) -> complex:
    """
    1/zeta(1 - s) = pi^{s - 1/2} Gamma((1 - s)/2) / Gamma(s/2) * 1/zeta(s).

    Args:
        s: Point s
        recip_s: 1/zeta(s)

    Returns:
        1/zeta(1 - s)

    Raises:
        TrivialZeroPole: At s = 3, 5, 7, ... where zeta(1 - s) = 0
        DomainError: At s = -2, -4, ... where 1/zeta(s) is infinite
    """
    s = complex(s)
    if s == 1:
        # Gamma pole cancels the zero of 1/zeta at s = 1
        return complex(_RECIPROCAL_AT_ZERO)
    if s == 0:
        # Gamma pole of s/2 sends the factor to 0; 1/zeta(1) = 0
        return 0j
    on_real_axis = s.imag == 0 and s.real == math.floor(s.real)
    if on_real_axis and s.real >= 3 and int(s.real) % 2 == 1:
        raise TrivialZeroPole(s)
    if on_real_axis and s.real < 0 and int(s.real) % 2 == 0:
        raise DomainError(
            f"zeta has a trivial zero at s = {s.real:g}; 1/zeta(s) is "
            f"infinite",
            point=s,
        )
    log_factor = (
        (s - 0.5) * math.log(math.pi)
        + log_gamma_complex((1 - s) / 2)
        - log_gamma_complex(s / 2)
    )
    return cmath.exp(log_factor) * complex(recip_s)


__all__ = [
    "EARLY_STOP_THRESHOLD",
    "ReciprocalService",
    "duality_transform",
]
