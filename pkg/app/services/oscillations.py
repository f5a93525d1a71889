"""Extrema, zero crossings and envelopes of sampled traces."""

import math
from typing import List, Optional, Tuple

import numpy as np

from app.exceptions import ConvergenceError, ValidationError
from app.logging_config import get_logger
from app.models import Extremum, OscillationReport, WaveTrace

logger = get_logger(__name__)

FLAT_THRESHOLD = 1e-300


def _refine(x: np.ndarray, y: np.ndarray, i: int) -> Tuple[float, float]:
    """Vertex of the parabola through samples i-1, i, i+1."""
    y_prev, y_mid, y_next = y[i - 1], y[i], y[i + 1]
    denominator = y_prev - 2 * y_mid + y_next
    if denominator == 0:
        return float(x[i]), float(y_mid)
    p = 0.5 * (y_prev - y_next) / denominator
    h = 0.5 * (x[i + 1] - x[i - 1])
    return float(x[i] + p * h), float(y_mid - 0.25 * (y_prev - y_next) * p)


def find_extrema(x: np.ndarray, y: np.ndarray) -> List[Extremum]:
    """Interior extrema from sign changes of the first differences."""
    d = np.diff(y)
    maxima = np.flatnonzero((d[:-1] > 0) & (d[1:] <= 0)) + 1
    minima = np.flatnonzero((d[:-1] < 0) & (d[1:] >= 0)) + 1
    found = []
    for indices, kind in ((maxima, "max"), (minima, "min")):
        for i in indices:
            xr, yr = _refine(x, y, int(i))
            found.append(Extremum(xr, yr, kind))
    found.sort(key=lambda e: e.x)
    return found


def find_zero_crossings(x: np.ndarray, y: np.ndarray) -> List[float]:
    """Sign changes located by linear interpolation."""
    crossings = []
    for i in np.flatnonzero(y[:-1] * y[1:] < 0):
        x0, x1, y0, y1 = x[i], x[i + 1], y[i], y[i + 1]
        crossings.append(float(x0 - y0 * (x1 - x0) / (y1 - y0)))
    crossings.extend(float(v) for v in x[1:-1][y[1:-1] == 0])
    return sorted(crossings)


def count_oscillations(extrema: List[Extremum]) -> int:
    """Maxima immediately followed by a minimum."""
    return sum(
        1
        for current, following in zip(extrema, extrema[1:])
        if current.kind == "max" and following.kind == "min"
    )


def analyze_oscillations(
    trace: WaveTrace,
    x_min: Optional[float] = None,
    x_max: Optional[float] = None,
) -> OscillationReport:
    """
    Locate extrema and zero crossings of a trace and count oscillations.

    Args:
        trace: Sampled trace (>= 3 samples)
        x_min: Optional lower x bound of the analysed window
        x_max: Optional upper x bound of the analysed window

    Returns:
        OscillationReport

    Raises:
        ValidationError: If fewer than 3 samples remain
        ConvergenceError: If every |value| is below 1e-300
    """
    if x_min is not None or x_max is not None:
        trace = trace.window(
            -math.inf if x_min is None else x_min,
            math.inf if x_max is None else x_max,
        )
    x, y = trace.x, trace.values
    if x.size < 3:
        raise ValidationError(
            f"trace '{trace.label}' has {x.size} samples; need >= 3",
            field="trace",
        )
    if np.all(np.abs(y) < FLAT_THRESHOLD):
        raise ConvergenceError(
            f"trace '{trace.label}' is too flat to analyze",
            reason="too_flat",
        )

    extrema = find_extrema(x, y)
    crossings = find_zero_crossings(x, y)
    count = count_oscillations(extrema)
    maxima_x = [e.x for e in extrema if e.kind == "max"]
    period = float(np.mean(np.diff(maxima_x))) if len(maxima_x) > 1 else None

    logger.info(
        f"Oscillations of {trace.label}: count={count}, "
        f"extrema={len(extrema)}, crossings={len(crossings)}"
    )
    return OscillationReport(
        label=trace.label,
        extrema=extrema,
        zero_crossings=crossings,
        count=count,
        period=period,
    )


def envelope_trend(
    report: OscillationReport, x_lo: float, x_hi: float
) -> float:
    """
    Slope of log|envelope| against x over [x_lo, x_hi].

    Positive means growing amplitudes, negative decaying.

    Raises:
        ConvergenceError: With fewer than two extrema in the window
    """
    points = [(xe, v) for xe, v in report.envelope if x_lo <= xe <= x_hi]
    points = [(xe, v) for xe, v in points if v > 0]
    if len(points) < 2:
        raise ConvergenceError(
            f"not enough extrema of {report.label} in [{x_lo}, {x_hi}]",
            reason="envelope_window",
        )
    xs, vs = zip(*points)
    slope, _ = np.polyfit(np.array(xs), np.log(np.array(vs)), 1)
    return float(slope)


def fit_log_decay_constant(
    report: OscillationReport, x_lo: float, x_hi: float
) -> float:
    """
    Constant A of the coefficient model c_k = A log(k) / k^E.

    On the wave scale this reads |psi(x)| ~ A x at the extrema, so A is
    the least-squares slope through the origin of the envelope against x.

    Raises:
        ConvergenceError: With no extrema in the window
    """
    points = [(xe, v) for xe, v in report.envelope if x_lo <= xe <= x_hi]
    if not points:
        raise ConvergenceError(
            f"no extrema of {report.label} in [{x_lo}, {x_hi}]",
            reason="envelope_window",
        )
    xs = np.array([p[0] for p in points])
    vs = np.array([p[1] for p in points])
    return float(np.dot(xs, vs) / np.dot(xs, xs))


__all__ = [
    "FLAT_THRESHOLD",
    "find_extrema",
    "find_zero_crossings",
    "count_oscillations",
    "analyze_oscillations",
    "envelope_trend",
    "fit_log_decay_constant",
]
