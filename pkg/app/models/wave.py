"""Wave parameters, sampled traces and oscillation reports."""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.exceptions import ConvergenceError, ValidationError
from app.validators import Validator

# psi_rho is only claimed to represent the coefficients for rho >= 1/2
REPRESENTATION_THRESHOLD = 0.5


class WaveParams(BaseModel):
    """
    Parameters (alpha, beta, rho, N) and the x-grid of one wave experiment.

    x is the logarithm of the coefficient index, k = e^x.
    """

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    alpha: float = Field(default=7.5, gt=1)
    beta: float = Field(default=4.0, gt=0)
    rho: float = 0.5
    truncation: int = Field(default=2000, ge=1)
    x_min: float = 0.0
    x_max: float = 30.0
    step: float = Field(default=0.01, gt=0)

    @model_validator(mode="after")
    def _check_grid(self) -> "WaveParams":
        if self.x_max < self.x_min:
            raise ValueError(
                f"x_max ({self.x_max}) must be >= x_min ({self.x_min})"
            )
        return self

    @property
    def exponent(self) -> float:
        """Growth exponent (alpha - rho)/beta of the prefactor e^{E x}."""
        return (self.alpha - self.rho) / self.beta

    @property
    def representation_valid(self) -> bool:
        return self.rho >= REPRESENTATION_THRESHOLD

    @property
    def validity_label(self) -> str:
        if self.representation_valid:
            return "valid"
        return "outside representation validity"

    def grid(self) -> np.ndarray:
        """Sample points x_min + i*step, i = 0..count-1."""
        count = Validator.validate_grid(self.x_min, self.x_max, self.step)
        return self.x_min + self.step * np.arange(count, dtype=np.float64)

    def with_rho(self, rho: float) -> "WaveParams":
        return self.model_copy(update={"rho": float(rho)})

    def describe(self) -> Dict[str, Any]:
        """Flat description used in report and CSV headers."""
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "rho": self.rho,
            "truncation": self.truncation,
            "x_min": self.x_min,
            "x_max": self.x_max,
            "step": self.step,
        }


class TraceKind(str, Enum):
    """Formula a trace was produced by."""

    PSI = "psi"
    PSI_LOG_CORRECTED = "psi_log_corrected"
    G_TRIVIAL = "g_trivial"
    R_NONTRIVIAL = "r_nontrivial"
    COMPOSITE = "composite"


@dataclass(frozen=True)
class WaveTrace:
    """
    Real function values sampled on a strictly increasing x-grid.

    For psi-type traces ``inner`` keeps the unscaled Moebius sum so that
    traces differing only in rho share it bit for bit.
    """

    params: WaveParams
    kind: TraceKind
    x: np.ndarray
    values: np.ndarray
    label: str
    zero_index: Optional[int] = None
    inner: Optional[np.ndarray] = None
    metadata: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.x.shape != self.values.shape or self.x.ndim != 1:
            raise ValidationError(
                f"trace '{self.label}': x and values must be 1-d arrays of "
                f"equal length",
                field="values",
            )
        if self.x.size > 1 and not np.all(np.diff(self.x) > 0):
            raise ValidationError(
                f"trace '{self.label}': x must be strictly increasing",
                field="x",
            )
        if not np.all(np.isfinite(self.values)):
            raise ConvergenceError(
                f"trace '{self.label}' holds non-finite values",
                reason="non_finite",
            )
        self.x.setflags(write=False)
        self.values.setflags(write=False)
        if self.inner is not None:
            self.inner.setflags(write=False)

    def __len__(self) -> int:
        return int(self.x.size)

    def __repr__(self) -> str:
        return (
            f"<WaveTrace(kind={self.kind.value}, label={self.label!r}, "
            f"points={len(self)})>"
        )

    @property
    def validity(self) -> str:
        return self.params.validity_label

    @property
    def samples(self) -> List[Tuple[float, float]]:
        return list(zip(self.x.tolist(), self.values.tolist()))

    def window(self, x_lo: float, x_hi: float) -> "WaveTrace":
        """Return the sub-trace with x_lo <= x <= x_hi."""
        mask = (self.x >= x_lo) & (self.x <= x_hi)
        return WaveTrace(
            params=self.params,
            kind=self.kind,
            x=self.x[mask].copy(),
            values=self.values[mask].copy(),
            label=self.label,
            zero_index=self.zero_index,
            inner=None if self.inner is None else self.inner[mask].copy(),
            metadata=dict(self.metadata),
        )


@dataclass(frozen=True)
class Extremum:
    x: float
    value: float
    kind: str  # "max" or "min"


@dataclass
class OscillationReport:
    """
    Extrema, zero crossings and envelope of one trace.

    One oscillation is a maximum immediately followed by a minimum.
    """

    label: str
    extrema: List[Extremum]
    zero_crossings: List[float]
    count: int
    period: Optional[float] = None

    @property
    def maxima(self) -> List[Extremum]:
        return [e for e in self.extrema if e.kind == "max"]

    @property
    def minima(self) -> List[Extremum]:
        return [e for e in self.extrema if e.kind == "min"]

    @property
    def envelope(self) -> List[Tuple[float, float]]:
        return [(e.x, abs(e.value)) for e in self.extrema]

    def envelope_before(self, x_limit: float, count: int = 3) -> List[float]:
        """|value| at the last ``count`` extrema with x < x_limit."""
        before = [abs(e.value) for e in self.extrema if e.x < x_limit]
        return before[-count:]

    def max_envelope(self) -> float:
        if not self.extrema:
            return 0.0
        return max(abs(e.value) for e in self.extrema)

    def summary(self) -> Dict[str, Any]:
        return {
            "label": self.label,
            "count": self.count,
            "extrema": len(self.extrema),
            "zero_crossings": len(self.zero_crossings),
            "period": self.period if self.period is not None else math.nan,
            "max_envelope": self.max_envelope(),
        }


__all__ = [
    "REPRESENTATION_THRESHOLD",
    "WaveParams",
    "TraceKind",
    "WaveTrace",
    "Extremum",
    "OscillationReport",
]
