"""Result records returned by the numerical services."""

import cmath
import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np


@dataclass(frozen=True)
class PochhammerValue:
    """
    P_k as log-modulus plus phase.

    Keeps values far below the double range meaningful; ``is_zero`` marks
    an exact zero (a vanishing factor).
    """

    log_modulus: float
    phase: float
    is_zero: bool = False
    path: str = "direct"

    @classmethod
    def zero(cls, path: str) -> "PochhammerValue":
        return cls(-math.inf, 0.0, True, path)

    @property
    def modulus(self) -> float:
        return 0.0 if self.is_zero else math.exp(self.log_modulus)

    @property
    def value(self) -> complex:
        if self.is_zero:
            return 0j
        return cmath.rect(math.exp(self.log_modulus), self.phase)


@dataclass
class BoundDiagnostic:
    """Scaled values |P_k| k^{Re z'} over a k-grid and a boundedness verdict."""

    z_prime: complex
    rows: List[Tuple[int, float]]
    supremum: float
    last_decade_max: float
    prior_max: float
    bounded: bool


@dataclass(frozen=True)
class FluctuationBound:
    """Closed-form integrals behind the exact-vs-exponential fluctuation."""

    k: float
    alpha: float
    beta: float
    i_exact: float
    i_exp: float
    difference: float
    exponent: float


@dataclass
class DecayFit:
    """Log-log fit delta_k ~ C k^slope."""

    mode: str
    k_values: np.ndarray
    deltas: np.ndarray
    slope: float
    constant: float
    expected_exponent: float

    @property
    def exponent_error(self) -> float:
        return self.slope + self.expected_exponent


@dataclass(frozen=True)
class DerivativeCheck:
    lhs: float
    rhs: float

    @property
    def abs_error(self) -> float:
        return abs(self.lhs - self.rhs)

    @property
    def rel_error(self) -> float:
        scale = max(abs(self.lhs), abs(self.rhs))
        return self.abs_error / scale if scale > 0 else 0.0


@dataclass(frozen=True)
class PoissonCheck:
    resummed: float
    direct: float
    weight_total: float
    peak_passed: bool

    @property
    def relative_error(self) -> float:
        if self.direct == 0.0:
            return abs(self.resummed)
        return abs(self.resummed - self.direct) / abs(self.direct)


@dataclass
class ReciprocalResult:
    """Partial sums of sum_k c_k P_k(s) for K = 0..k_used."""

    s: complex
    partial_sums: np.ndarray
    increments: np.ndarray
    stopped_early: bool
    validity_claimed: bool
    notes: List[str] = field(default_factory=list)
    limit: Optional[complex] = None

    @property
    def final(self) -> complex:
        return complex(self.partial_sums[-1])

    @property
    def tail_estimate(self) -> Optional[complex]:
        """What the terms beyond k_used still add at fixed N."""
        if self.limit is None:
            return None
        return self.limit - self.final

    @property
    def k_used(self) -> int:
        return int(self.partial_sums.size - 1)

    def decade_table(self) -> List[Tuple[int, complex, float]]:
        """(K, partial sum, max |increment| since previous decade)."""
        rows = []
        start = 0
        stop = 1
        while start <= self.k_used:
            end = min(stop, self.k_used + 1)
            chunk = np.abs(self.increments[start:end])
            rows.append(
                (end - 1, complex(self.partial_sums[end - 1]),
                 float(chunk.max()) if chunk.size else 0.0)
            )
            start, stop = end, stop * 10
        return rows

    def error_against(self, reference: complex) -> float:
        return abs(self.final - reference)


__all__ = [
    "PochhammerValue",
    "BoundDiagnostic",
    "FluctuationBound",
    "DecayFit",
    "DerivativeCheck",
    "PoissonCheck",
    "ReciprocalResult",
]
