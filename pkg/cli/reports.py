"""Text and CSV reports aggregating the numerical services."""

from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from app.exceptions import (
    ConvergenceError,
    DomainError,
    TrivialZeroPole,
    ValidationError,
)
from app.logging_config import get_logger
from app.models import (
    ExperimentConfig,
    ReciprocalQuery,
    StabilityProblem,
    TailSource,
)
from app.services.coefficients import CoefficientService, ck_fluctuation_bound
from app.services.numtheory import zeta_complex, zeta_real
from app.services.oscillations import (
    analyze_oscillations,
    envelope_trend,
    fit_log_decay_constant,
)
from app.services.pochhammer import pochhammer_bound_diagnostic
from app.services.reciprocal import ReciprocalService, duality_transform
from app.services.stability import StabilityService
from cli.figures import Workbench
from cli.writers import header_lines, table_lines, write_csv, write_text

logger = get_logger(__name__)

REPORT_KINDS = ("coefficients", "stability", "oscillations", "reciprocal")

DECAY_K_VALUES = tuple(2**j for j in range(4, 21))
UNCONDITIONAL_K_VALUES = DECAY_K_VALUES
DERIVATIVE_K_VALUES = (0, 1, 10, 100)
INTEGRAL_K_VALUES = (10, 100, 1000)
HALVING_TRUNCATIONS = (2000, 10**9)
ENVELOPE_TREND_WINDOW = (15.0, 27.0)
DECAY_CONSTANT_WINDOW = (10.0, 30.0)
BOUND_K_GRID = tuple(10**j for j in range(2, 11))

Section = Tuple[List[str], List[str], List[Sequence[Any]]]


def reference_reciprocal(s: complex) -> Optional[complex]:
    """1/zeta(s) where it can be evaluated directly (Re s > 0, s != 1)."""
    s = complex(s)
    try:
        if s.imag == 0 and s.real > 1:
            return complex(1.0 / zeta_real(s.real))
        return 1.0 / zeta_complex(s)
    except DomainError:
        return None


def _coefficients(bench: Workbench, options: Dict[str, Any]) -> Section:
    params = bench.config.params
    service = CoefficientService(bench.table)
    truncation = params.truncation
    lines = ["Coefficient report", ""]
    rows: List[Sequence[Any]] = []

    runs = [
        ("signed", params.alpha, params.beta, DECAY_K_VALUES),
        ("unconditional", params.alpha, params.beta, UNCONDITIONAL_K_VALUES),
        ("unconditional", 2.0, 2.0, UNCONDITIONAL_K_VALUES),
        ("integral", params.alpha, params.beta, DECAY_K_VALUES),
        ("integral", 2.0, 2.0, DECAY_K_VALUES),
    ]
    fit_rows = []
    for mode, alpha, beta, ks in runs:
        fit = service.fluctuation_decay_fit(ks, alpha, beta, truncation, mode)
        fit_rows.append(
            (mode, alpha, beta, fit.slope, -fit.expected_exponent, fit.constant)
        )
        for k, delta in zip(fit.k_values.tolist(), fit.deltas.tolist()):
            rows.append(("fluctuation", mode, alpha, beta, int(k), delta))
    lines.append("Fluctuation decay |c^_k - c_k| ~ C k^slope")
    lines.extend(
        table_lines(
            ["mode", "alpha", "beta", "slope", "expected", "C"], fit_rows
        )
    )

    lines.extend(["", "Discrete derivative c_k - c_{k+1} = c_k(alpha+beta)"])
    derivative_rows = []
    for k in DERIVATIVE_K_VALUES:
        check = service.ck_discrete_derivative_check(
            k, params.alpha, params.beta, truncation
        )
        derivative_rows.append((k, check.lhs, check.rhs, check.rel_error))
        rows.append(
            ("derivative", "discrete", params.alpha, params.beta, k,
             check.rel_error)
        )
    lines.extend(table_lines(["k", "lhs", "rhs", "rel_error"], derivative_rows))

    continuous = service.continuous_derivative_check(
        100.0, params.alpha, params.beta, truncation
    )
    lines.append(
        f"Continuous derivative at k=100: rel_error={continuous.rel_error!r}"
    )
    rows.append(
        ("derivative", "continuous", params.alpha, params.beta, 100,
         continuous.rel_error)
    )

    poisson = service.poisson_resum_check(
        20, 80, params.alpha, params.beta, truncation
    )
    lines.append(
        f"Poisson resummation at k=20: resummed={poisson.resummed!r}, "
        f"direct={poisson.direct!r}, rel_error={poisson.relative_error!r}"
    )
    rows.append(
        ("poisson", "k=20", params.alpha, params.beta, 20,
         poisson.relative_error)
    )

    lines.extend(["", "Weight integrals"])
    integral_rows = []
    for k in INTEGRAL_K_VALUES:
        bound = ck_fluctuation_bound(k, params.alpha, params.beta)
        integral_rows.append((k, bound.i_exact, bound.i_exp, bound.difference))
        rows.append(
            ("integral", "difference", params.alpha, params.beta, k,
             bound.difference)
        )
    lines.extend(
        table_lines(["k", "I_exact", "I_exp", "difference"], integral_rows)
    )
    columns = ["section", "mode", "alpha", "beta", "k", "value"]
    return lines, columns, rows


def _stability(bench: Workbench, options: Dict[str, Any]) -> Section:
    params = bench.config.params
    service = StabilityService()
    base = StabilityProblem(
        alpha=params.alpha,
        beta=params.beta,
        **{
            key: options[key]
            for key in ("rho", "n_low", "n_high", "amplitude",
                        "relative_tolerance")
            if options.get(key) is not None
        },
    )
    lines = ["Stability report", ""]
    rows: List[Sequence[Any]] = []
    for source in (TailSource.PRINTED, TailSource.INTEGRAL, TailSource.DIRECT):
        problem = base.model_copy(update={"tail_source": source})
        lines.append(f"[{source.value} tail]")
        try:
            report = service.solve_stability_threshold(problem)
        except ConvergenceError as e:
            lines.append(f"  infeasible: {e.message}")
            rows.append((source.value, "feasible", "False"))
            continue
        for key, value in report.as_rows():
            lines.append(f"  {key} = {value}")
            rows.append((source.value, key, value))
        lines.extend(f"  note: {note}" for note in report.notes)

    lines.extend(["", "Amplitude halving thresholds"])
    halving = service.amplitude_halving_thresholds(base, HALVING_TRUNCATIONS)
    lines.extend(table_lines(["N", "x_threshold"], halving))
    for n, threshold in halving:
        rows.append(("halving", f"N={n}", repr(threshold)))
    return lines, ["run", "key", "value"], rows


def _oscillations(bench: Workbench, options: Dict[str, Any]) -> Section:
    params = bench.config.params
    if options.get("rho") is not None:
        params = params.with_rho(options["rho"])
    trace = bench.wave.psi(params)
    bench.validate(trace)
    report = analyze_oscillations(trace)
    lines = [f"Oscillation report for {trace.label} ({trace.validity})", ""]
    for key, value in report.summary().items():
        lines.append(f"{key} = {value}")

    for name, window, fit in (
        ("envelope_trend", ENVELOPE_TREND_WINDOW, envelope_trend),
        ("log_decay_constant", DECAY_CONSTANT_WINDOW, fit_log_decay_constant),
    ):
        try:
            lines.append(f"{name} {window} = {fit(report, *window)!r}")
        except ConvergenceError as e:
            lines.append(f"{name} {window}: {e.message}")

    lines.extend(["", "Extrema"])
    extrema_rows = [(e.kind, e.x, e.value) for e in report.extrema]
    lines.extend(table_lines(["kind", "x", "value"], extrema_rows))
    return lines, ["kind", "x", "value"], extrema_rows


def _reciprocal(bench: Workbench, options: Dict[str, Any]) -> Section:
    params = bench.config.params
    s = complex(2.0 if options.get("s") is None else options["s"])
    query = ReciprocalQuery.of(
        s,
        alpha=params.alpha,
        beta=params.beta,
        k_max=options.get("k_max") or 10_000,
        truncation=params.truncation,
    )
    service = ReciprocalService(CoefficientService(bench.table))
    result = service.reciprocal_zeta_partial(query)

    lines = [f"Reciprocal report at s = {s}", ""]
    lines.extend(f"note: {note}" for note in result.notes)
    reference = reference_reciprocal(s)
    lines.append(f"final = {result.final!r} (K = {result.k_used})")
    lines.append(f"stopped_early = {result.stopped_early}")
    lines.append(f"limit k -> inf at N = {query.truncation}: {result.limit!r}")
    lines.append(f"tail beyond K = {result.tail_estimate!r}")
    if reference is not None:
        lines.append(f"1/zeta(s) = {reference!r}")
        lines.append(f"error = {result.error_against(reference)!r}")
        lines.append(f"error of limit = {abs(result.limit - reference)!r}")

    try:
        dual = duality_transform(s, result.final)
        lines.append(f"1/zeta(1 - s) via duality = {dual!r}")
    except (TrivialZeroPole, DomainError) as e:
        lines.append(f"duality: {e.message}")

    rows = [
        (k, value.real, value.imag, increment)
        for k, value, increment in result.decade_table()
    ]
    lines.extend(["", "Convergence by decade"])
    lines.extend(table_lines(["K", "real", "imag", "max_increment"], rows))

    try:
        diagnostic = pochhammer_bound_diagnostic(
            s, params.alpha, params.beta, BOUND_K_GRID
        )
        lines.extend(
            [
                "",
                f"Pochhammer bound |P_k| k^Re(z') over 1e2..1e10: "
                f"bounded={diagnostic.bounded}, "
                f"sup={diagnostic.supremum!r}",
            ]
        )
    except ValidationError as e:
        lines.append(f"Pochhammer bound: {e.message}")
    return lines, ["K", "real", "imag", "max_increment"], rows


REPORTS: Dict[str, Callable[[Workbench, Dict[str, Any]], Section]] = {
    "coefficients": _coefficients,
    "stability": _stability,
    "oscillations": _oscillations,
    "reciprocal": _reciprocal,
}


def run_report(
    kind: str,
    config: ExperimentConfig,
    bench: Optional[Workbench] = None,
    **options: Any,
) -> List[Path]:
    """
    Write {kind}_report.txt and {kind}_report.csv.

    Args:
        kind: coefficients, stability, oscillations or reciprocal
        config: Experiment configuration
        bench: Prepared workbench (built from config when omitted)
        **options: Per-report settings (s, k_max, rho, n_high, ...)

    Returns:
        Paths of the text and CSV reports

    Raises:
        ValidationError: For an unknown report kind
    """
    builder = REPORTS.get(kind)
    if builder is None:
        raise ValidationError(
            f"Unknown report '{kind}'. Must be one of: "
            f"{', '.join(REPORT_KINDS)}",
            field="kind",
        )
    bench = bench or Workbench.create(config)
    logger.info(f"Building {kind} report")
    lines, columns, rows = builder(bench, options)

    header: Dict[str, Any] = {"report": kind}
    header.update(config.header())
    header.update({k: v for k, v in options.items() if v is not None})
    preamble = header_lines(header)
    directory = config.output_dir
    return [
        write_text(directory / f"{kind}_report.txt", preamble + [""] + lines),
        write_csv(directory / f"{kind}_report.csv", columns, rows, header),
    ]


__all__ = [
    "REPORT_KINDS",
    "reference_reciprocal",
    "run_report",
]
