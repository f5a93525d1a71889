"""Inputs and outputs of the truncation-stability analysis."""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

# Tail constant as printed in the literature for sum_{2000 < n} n^{-15/2};
# kept verbatim next to the recomputed value, never substituted silently.
PRINTED_TAIL_CONSTANT = (2.0 / 65.0) * 1e-26


class TailSource(str, Enum):
    """Which tail constant feeds the stability inequality."""

    PRINTED = "printed"
    INTEGRAL = "integral"
    DIRECT = "direct"


class StabilityProblem(BaseModel):
    """
    The ideal experiment: grow the Moebius truncation from N_low to N_high.

    amplitude * relative_tolerance is the largest admissible change.
    """

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    alpha: float = Field(default=7.5, gt=1)
    beta: float = Field(default=4.0, gt=0)
    rho: float = 0.75
    n_low: int = Field(default=2000, ge=1)
    n_high: int = Field(default=10**6, ge=2)
    amplitude: float = Field(default=0.015, gt=0)
    relative_tolerance: float = Field(default=1e-6, gt=0, lt=1)
    tail_source: TailSource = TailSource.INTEGRAL

    @model_validator(mode="after")
    def _ordered_truncations(self) -> "StabilityProblem":
        if self.n_low >= self.n_high:
            raise ValueError(
                f"n_low ({self.n_low}) must be < n_high ({self.n_high})"
            )
        return self

    @property
    def exponent(self) -> float:
        return (self.alpha - self.rho) / self.beta

    @property
    def log_damping(self) -> float:
        """ln D with D = N_high^beta."""
        return self.beta * math.log(self.n_high)

    @property
    def target(self) -> float:
        return self.amplitude * self.relative_tolerance


@dataclass
class BoundReport:
    """
    Tail constants and solved x-thresholds for one StabilityProblem.

    x_threshold is the lower root of the bound function (stable below it);
    upper_root is where the damping wins again. x_threshold is +inf when the
    bound never reaches the target.
    """

    problem: StabilityProblem
    tail_direct: float
    tail_integral: float
    tail_used: float
    exponent: float
    log_damping: float
    feasible: bool
    x_threshold: Optional[float] = None
    upper_root: Optional[float] = None
    residual: float = 0.0
    printed_constant_comparison: Optional[Tuple[float, float]] = None
    notes: List[str] = field(default_factory=list)

    @property
    def tail_constant(self) -> float:
        return self.tail_direct

    def as_rows(self) -> List[Tuple[str, str]]:
        p = self.problem
        rows = [
            ("alpha", repr(p.alpha)),
            ("beta", repr(p.beta)),
            ("rho", repr(p.rho)),
            ("n_low", str(p.n_low)),
            ("n_high", str(p.n_high)),
            ("amplitude", repr(p.amplitude)),
            ("relative_tolerance", repr(p.relative_tolerance)),
            ("tail_source", p.tail_source.value),
            ("exponent", repr(self.exponent)),
            ("log_damping", repr(self.log_damping)),
            ("tail_direct", repr(self.tail_direct)),
            ("tail_integral", repr(self.tail_integral)),
            ("tail_used", repr(self.tail_used)),
            ("feasible", str(self.feasible)),
            ("x_threshold", repr(self.x_threshold)),
            ("upper_root", repr(self.upper_root)),
            ("residual", repr(self.residual)),
        ]
        if self.printed_constant_comparison is not None:
            printed, recomputed = self.printed_constant_comparison
            rows.append(("printed_tail_constant", repr(printed)))
            rows.append(("recomputed_tail_constant", repr(recomputed)))
        return rows


__all__ = [
    "PRINTED_TAIL_CONSTANT",
    "TailSource",
    "StabilityProblem",
    "BoundReport",
]
