"""Figure data for the five critical wave plots."""

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from app.exceptions import ValidationError
from app.logging_config import get_logger
from app.models import (
    ExperimentConfig,
    MoebiusTable,
    PrecisionMode,
    WaveTrace,
    ZeroSet,
)
from app.services.numtheory import default_zero_set, moebius_sieve
from app.services.parallel import BlockExecutor
from app.services.precision import HighPrecisionValidator
from app.services.sieve_cache import SieveCache
from app.services.wave import CriticalWaveService, composite, fraction_label
from cli.writers import write_series_csv, write_svg

logger = get_logger(__name__)

FIGURE_RHOS = (1.0, 0.875, 0.75, 0.625, 0.5, 0.375, 0.3)
HYPOTHETICAL_REAL_PART = 0.75
RESIDUAL_WINDOW_START = 5.0
RESIDUAL_THRESHOLD = 0.25

Panel = Tuple[str, List[Tuple[str, WaveTrace]], Dict[str, object]]


@dataclass
class Workbench:
    """Table, zeros and wave service shared by one CLI run."""

    config: ExperimentConfig
    table: MoebiusTable
    zeros: ZeroSet
    wave: CriticalWaveService

    @classmethod
    def create(
        cls,
        config: ExperimentConfig,
        table: Optional[MoebiusTable] = None,
        use_cache: bool = False,
    ) -> "Workbench":
        truncation = config.params.truncation
        if table is None or table.limit < truncation:
            if use_cache:
                table = SieveCache().get_or_build(truncation)
            else:
                table = moebius_sieve(truncation)
        zeros = default_zero_set(config.zero_count, config.trivial_terms)
        executor = BlockExecutor(config.max_workers, config.block_size)
        wave = CriticalWaveService(table, zeros, executor)
        return cls(config=config, table=table, zeros=zeros, wave=wave)

    def validate(self, *traces: WaveTrace) -> None:
        """mpmath spot checks of psi traces when running validated."""
        if self.config.precision_mode is not PrecisionMode.VALIDATED:
            return
        validator = HighPrecisionValidator(
            self.table,
            self.config.validation_points,
            self.config.validation_tolerance,
        )
        for trace in traces:
            if trace.inner is not None:
                validator.validate(trace)


def _minus_r_label(zero_count: int) -> str:
    return "".join(f"-r{j}(x)" for j in range(1, zero_count + 1))


def _plus_r_label(zero_count: int) -> str:
    return "".join(f"+r{j}(x)" for j in range(1, zero_count + 1))


def decomposition_residual(
    lhs: WaveTrace, rhs: WaveTrace, x_from: float = RESIDUAL_WINDOW_START
) -> float:
    """max |lhs - rhs| over x >= x_from relative to max |rhs| there."""
    mask = lhs.x >= x_from
    if not np.any(mask):
        return math.nan
    scale = float(np.max(np.abs(rhs.values[mask])))
    residual = float(np.max(np.abs(lhs.values[mask] - rhs.values[mask])))
    return residual / scale if scale > 0 else math.inf


def _figure_1(bench: Workbench) -> Panel:
    config = bench.config
    params = config.params
    psi = bench.wave.psi(params)
    bench.validate(psi)
    g = bench.wave.g_trivial(params, config.trivial_terms)
    rho = fraction_label(params.rho)
    r = bench.wave.nontrivial_sum(params, config.zero_count)
    lhs = psi if r is None else composite([(1.0, psi), (-1.0, r)], "lhs")
    ratio = decomposition_residual(lhs, g)
    logger.info(f"Figure 1 decomposition residual ratio: {ratio:.4f}")
    return (
        f"psi(x){_minus_r_label(config.zero_count)} and g_{rho}(x)",
        [
            (f"psi(x){_minus_r_label(config.zero_count)}", lhs),
            (f"g_{rho}(x)", g),
        ],
        {
            "residual_ratio": ratio,
            "residual_threshold": RESIDUAL_THRESHOLD,
            "residual_window_start": RESIDUAL_WINDOW_START,
        },
    )


def _figure_2(bench: Workbench) -> Panel:
    config = bench.config
    if config.zero_count < 1:
        raise ValidationError(
            "figure 2 needs zero_count >= 1", field="zero_count"
        )
    params = config.params
    psi = bench.wave.psi(params)
    bench.validate(psi)
    g = bench.wave.g_trivial(params, config.trivial_terms)
    r = bench.wave.nontrivial_sum(params, config.zero_count)
    rho = fraction_label(params.rho)
    lhs = composite([(1.0, psi), (-1.0, g)], "lhs")
    r_label = _plus_r_label(config.zero_count)[1:]
    return (
        f"psi(x)-g_{rho}(x) and {r_label}",
        [(f"psi(x)-g_{rho}(x)", lhs), (r_label, r)],
        {"residual_ratio": decomposition_residual(lhs, r)},
    )


def _figure_3(bench: Workbench) -> Panel:
    base = bench.config.params
    series = []
    for rho in FIGURE_RHOS:
        trace = bench.wave.psi(base.with_rho(rho))
        bench.validate(trace)
        series.append((trace.label, trace))
    return (
        "psi_rho for rho = 1, 7/8, 3/4, 5/8, 1/2, 3/8, 3/10",
        series,
        {"rho_values": " ".join(fraction_label(r) for r in FIGURE_RHOS)},
    )


def positive_grid_params(config: ExperimentConfig):
    """Parameters whose grid starts at the first grid point x > 0."""
    params = config.params
    if params.x_min > 0:
        return params
    shift = math.floor(-params.x_min / params.step) + 1
    return params.model_copy(
        update={"x_min": params.x_min + shift * params.step}
    )


def _figure_4(bench: Workbench) -> Panel:
    params = positive_grid_params(bench.config)
    trace = bench.wave.psi_log_corrected(params)
    bench.validate(trace)
    return (
        f"Plot of psi_{fraction_label(params.rho)}+",
        [(trace.label, trace)],
        {"x_first": float(trace.x[0])},
    )


def _figure_5(bench: Workbench) -> Panel:
    config = bench.config
    params = config.params.with_rho(HYPOTHETICAL_REAL_PART)
    psi = bench.wave.psi(params)
    bench.validate(psi)
    g = bench.wave.g_trivial(params, config.trivial_terms)
    r = bench.wave.nontrivial_sum(
        params, config.zero_count, real_part=HYPOTHETICAL_REAL_PART
    )
    rho = fraction_label(HYPOTHETICAL_REAL_PART)
    rhs = g if r is None else composite([(1.0, g), (1.0, r)], "rhs")
    rhs_label = f"g_{rho}(x){_plus_r_label(config.zero_count)}"
    return (
        f"psi_{rho}(x) and {rhs_label}",
        [(f"psi_{rho}(x)", psi), (rhs_label, rhs)],
        {"hypothetical_real_part": HYPOTHETICAL_REAL_PART},
    )


FIGURES: Dict[int, Callable[[Workbench], Panel]] = {
    1: _figure_1,
    2: _figure_2,
    3: _figure_3,
    4: _figure_4,
    5: _figure_5,
}


def build_figure(n: int, bench: Workbench) -> Panel:
    """
    Compute the series of figure n without writing anything.

    Raises:
        ValidationError: If n is not 1..5
    """
    builder = FIGURES.get(n)
    if builder is None:
        raise ValidationError(
            f"figure must be one of 1..5, got {n}", field="figure"
        )
    return builder(bench)


def run_figure(
    n: int,
    config: ExperimentConfig,
    bench: Optional[Workbench] = None,
) -> List[Path]:
    """
    Write figure n as CSV (x plus one column per series) and/or SVG.

    Args:
        n: Figure number 1..5
        config: Experiment configuration
        bench: Prepared workbench (built from config when omitted)

    Returns:
        Paths of the files written
    """
    bench = bench or Workbench.create(config)
    logger.info(f"Building figure {n}")
    title, series, notes = build_figure(n, bench)
    x = series[0][1].x
    arrays = [(name, trace.values) for name, trace in series]
    header = {"figure": n, "title": title}
    header.update(config.header())
    header.update(notes)

    written = []
    if config.wants_csv:
        written.append(
            write_series_csv(
                config.output_dir / f"figure{n}.csv", x, arrays, header
            )
        )
    if config.wants_svg:
        written.append(
            write_svg(config.output_dir / f"figure{n}.svg", x, arrays, title)
        )
    return written


__all__ = [
    "FIGURE_RHOS",
    "HYPOTHETICAL_REAL_PART",
    "RESIDUAL_THRESHOLD",
    "Workbench",
    "decomposition_residual",
    "positive_grid_params",
    "build_figure",
    "run_figure",
]
