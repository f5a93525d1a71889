"""High-precision spot checks of double-precision wave sums (mpmath)."""

from typing import List, Optional, Tuple

import mpmath as mp
import numpy as np

from app.config import settings
from app.exceptions import ConvergenceError
from app.logging_config import get_logger
from app.models import MoebiusTable, WaveParams, WaveTrace

logger = get_logger(__name__)

WORKING_DPS = 40


class HighPrecisionValidator:
    """
    Recompute the Moebius inner sum at a few grid points with mpmath.

    The discrepancy is measured against sum |terms|, the natural scale of
    a sign-mixed sum whose value can pass through zero.
    """

    def __init__(
        self,
        table: MoebiusTable,
        points: Optional[int] = None,
        tolerance: Optional[float] = None,
    ):
        """
        Initialize validator.

        Args:
            table: Moebius table
            points: Spot points per trace (VALIDATION_POINTS by default)
            tolerance: Largest accepted relative discrepancy
        """
        self.table = table
        self.points = points or settings.validation_points
        self.tolerance = tolerance or settings.validation_tolerance

    def reference_inner(
        self, params: WaveParams, x: float
    ) -> Tuple[mp.mpf, mp.mpf]:
        """(inner sum, sum of |terms|) at x, evaluated with 40 digits."""
        n, mu = self.table.squarefree_support(params.truncation)
        with mp.workdps(WORKING_DPS):
            k = mp.exp(mp.mpf(float(x)))
            alpha = mp.mpf(params.alpha)
            beta = mp.mpf(params.beta)
            total = mp.mpf(0)
            magnitude = mp.mpf(0)
            for ni, mi in zip(n.tolist(), mu.tolist()):
                term = mp.power(ni, -alpha) * mp.exp(-k / mp.power(ni, beta))
                total += int(mi) * term
                magnitude += term
            return +total, +magnitude

    def spot_indices(self, size: int) -> List[int]:
        count = min(self.points, size)
        return sorted(
            set(np.linspace(0, size - 1, count).round().astype(int).tolist())
        )

    def validate(self, trace: WaveTrace) -> List[Tuple[float, float]]:
        """
        Check a psi-type trace's inner sum at evenly spread points.

        Returns:
            List of (x, relative discrepancy)

        Raises:
            ConvergenceError: If any discrepancy exceeds the tolerance
        """
        if trace.inner is None:
            raise ConvergenceError(
                f"trace '{trace.label}' carries no inner sum to validate",
                reason="no_inner",
            )
        results = []
        for i in self.spot_indices(len(trace)):
            x = float(trace.x[i])
            reference, magnitude = self.reference_inner(trace.params, x)
            if magnitude == 0:
                discrepancy = 0.0
            else:
                discrepancy = float(
                    abs(mp.mpf(float(trace.inner[i])) - reference) / magnitude
                )
            results.append((x, discrepancy))
            logger.debug(f"Validated {trace.label} at x={x}: {discrepancy:.3e}")
            if discrepancy > self.tolerance:
                logger.error(
                    f"High-precision check failed for {trace.label} at "
                    f"x={x}: {discrepancy:.3e} > {self.tolerance:.3e}"
                )
                raise ConvergenceError(
                    f"{trace.label} at x={x} differs from the "
                    f"{WORKING_DPS}-digit reference by {discrepancy:.3e}",
                    reason="validation",
                )
        logger.info(
            f"High-precision validation passed for {trace.label} "
            f"({len(results)} points)"
        )
        return results


__all__ = ["WORKING_DPS", "HighPrecisionValidator"]
