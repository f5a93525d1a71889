"""Truncation-stability thresholds for the critical wave.

Growing the Moebius truncation adds terms bounded by
e^{E x} * C * e^{-e^x / D}; the log of that bound minus log(target) is

    f(x) = E x - e^x / D + ln C - ln target,

a concave function with its maximum at x* = ln(E D). Its lower root is the
stability threshold, its upper root the point past which the damping
forces the bound back under the target.
"""

import math
from typing import Iterable, List, Optional, Tuple

from scipy import optimize

from app.exceptions import ConvergenceError
from app.logging_config import get_logger
from app.models import (
    PRINTED_TAIL_CONSTANT,
    BoundReport,
    StabilityProblem,
    TailSource,
)
from app.services.numtheory import zeta_partial, zeta_tail
from app.validators import Validator

logger = get_logger(__name__)

XTOL = 1e-12
_BRACKET_LIMIT = 200


def bound_function(
    x: float, exponent: float, log_damping: float, log_constant: float
) -> float:
    """f(x) with log_constant = ln C - ln target."""
    return exponent * x - math.exp(x - log_damping) + log_constant


def tail_bounds(
    alpha: float, n_low: int, n_high: int
) -> Tuple[float, float]:
    """
    Tail of sum n^-alpha beyond N_low.

    Returns:
        (direct sum over N_low < n <= N_high,
         integral bound N_low^{1-alpha}/(alpha - 1))
    """
    alpha = Validator.validate_alpha(alpha)
    direct = zeta_tail(alpha, n_low + 1) - zeta_tail(alpha, n_high + 1)
    integral = n_low ** (1 - alpha) / (alpha - 1)
    return direct, integral


def solve_roots(
    exponent: float, log_damping: float, log_constant: float
) -> Tuple[Optional[float], Optional[float]]:
    """
    Lower and upper roots of f on [0, inf).

    Returns:
        (lower, upper); lower is None when f(0) > 0 (bound exceeds the
        target from the start) or when f never becomes positive; upper is
        None when f never becomes positive on [0, inf).
    """

    def f(x: float) -> float:
        return bound_function(x, exponent, log_damping, log_constant)

    peak = max(math.log(exponent) + log_damping, 0.0) if exponent > 0 else 0.0
    f0, f_peak = f(0.0), f(peak)
    if f_peak <= 0 and f0 <= 0:
        return None, None

    lower = None
    if f0 <= 0 < f_peak:
        lower = optimize.bisect(f, 0.0, peak, xtol=XTOL)

    width = 1.0
    hi = peak + width
    while f(hi) >= 0:
        width *= 2
        hi = peak + width
        if width > _BRACKET_LIMIT:
            raise ConvergenceError(
                "could not bracket the upper root of the bound function",
                reason="bracket",
            )
    upper = optimize.bisect(f, peak, hi, xtol=XTOL)
    return lower, upper


class StabilityService:
    """Solve the stability inequality for the ideal truncation experiment."""

    def solve_stability_threshold(
        self, problem: StabilityProblem
    ) -> BoundReport:
        """
        x below which growing N from N_low to N_high changes psi by less
        than amplitude * relative_tolerance.

        Args:
            problem: StabilityProblem (tail_source picks the constant)

        Returns:
            BoundReport with both tail constants and the printed one

        Raises:
            ConvergenceError: If the problem is infeasible at x = 0
        """
        direct, integral = tail_bounds(
            problem.alpha, problem.n_low, problem.n_high
        )
        tail_used = {
            TailSource.PRINTED: PRINTED_TAIL_CONSTANT,
            TailSource.INTEGRAL: integral,
            TailSource.DIRECT: direct,
        }[problem.tail_source]
        log_constant = math.log(tail_used) - math.log(problem.target)

        report = BoundReport(
            problem=problem,
            tail_direct=direct,
            tail_integral=integral,
            tail_used=tail_used,
            exponent=problem.exponent,
            log_damping=problem.log_damping,
            feasible=True,
            printed_constant_comparison=(PRINTED_TAIL_CONSTANT, integral),
        )
        if bound_function(
            0.0, problem.exponent, problem.log_damping, log_constant
        ) > 0:
            logger.warning(
                f"Stability problem infeasible: tail={tail_used:.3e}, "
                f"target={problem.target:.3e}"
            )
            raise ConvergenceError(
                f"infeasible: tail {tail_used:.3e} exceeds target "
                f"{problem.target:.3e} at x = 0",
                reason="infeasible",
            )

        lower, upper = solve_roots(
            problem.exponent, problem.log_damping, log_constant
        )
        report.x_threshold = math.inf if lower is None else lower
        report.upper_root = upper
        if lower is None:
            report.notes.append("bound never reaches the target")
        else:
            report.residual = abs(
                bound_function(
                    lower, problem.exponent, problem.log_damping, log_constant
                )
            )
        logger.info(
            f"Stability threshold ({problem.tail_source.value} tail "
            f"{tail_used:.4e}): x <= {report.x_threshold:.6f}"
        )
        return report

    def amplitude_halving_thresholds(
        self, problem: StabilityProblem, n_values: Iterable[int]
    ) -> List[Tuple[int, float]]:
        """
        For each N, the x beyond which the unconditional bound
        e^{E x} sum_{n<=N} n^-alpha e^{-e^x/N^beta} is below amplitude/2.

        Args:
            problem: Supplies alpha, beta, rho and amplitude
            n_values: Truncations N

        Returns:
            List of (N, x_threshold), ordered as given
        """
        results = []
        for n in n_values:
            n = Validator.validate_positive_int(n, "N")
            constant = zeta_partial(problem.alpha, n)
            log_constant = math.log(constant) - math.log(problem.amplitude / 2)
            log_damping = problem.beta * math.log(n)
            _, upper = solve_roots(problem.exponent, log_damping, log_constant)
            threshold = 0.0 if upper is None else upper
            logger.info(
                f"Amplitude halving threshold N={n}: x > {threshold:.4f}"
            )
            results.append((n, threshold))
        return results


__all__ = [
    "XTOL",
    "bound_function",
    "tail_bounds",
    "solve_roots",
    "StabilityService",
]
