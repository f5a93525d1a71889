"""Command-line entry point for the critical wave experiments."""

import argparse
import sys
from typing import Any, Dict, Optional, Sequence

from pydantic import ValidationError as PydanticValidationError

from app.config import settings
from app.exceptions import (
    ConfigurationError,
    ConvergenceError,
    CriticalWaveException,
    DomainError,
    OutputError,
    SieveCacheError,
    TrivialZeroPole,
    ValidationError,
)
from app.logging_config import get_logger, parse_module_levels, setup_logging
from app.models import (
    CoefficientForm,
    ExperimentConfig,
    StabilityProblem,
    TailSource,
)
from app.services.coefficients import CoefficientService
from app.services.numtheory import moebius_sieve
from app.services.oscillations import analyze_oscillations
from app.services.sieve_cache import SieveCache
from app.services.stability import StabilityService
from cli.config_file import (
    CONFIG_KEYS,
    build_experiment_config,
    load_config_file,
)
from cli.figures import Workbench, run_figure
from cli.reports import REPORT_KINDS, run_report
from cli.writers import write_series_csv

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_NONCONVERGENT = 2
EXIT_IO = 3

WAVE_KINDS = ("psi", "log", "g", "r", "zeros")


class ArgumentParser(argparse.ArgumentParser):
    """argparse with invalid arguments mapped to exit code 1."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def parse_complex(value: str) -> complex:
    """Accept 2, 0.5+14.13j and 0.5+14.13i."""
    text = value.strip().replace(" ", "").replace("i", "j")
    try:
        return complex(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {value!r}")


def _experiment_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    group = common.add_argument_group("experiment")
    group.add_argument("--config", help="flat key=value experiment file")
    group.add_argument("--alpha", type=float)
    group.add_argument("--beta", type=float)
    group.add_argument("--rho", type=float)
    group.add_argument("--truncation", type=int, help="Moebius truncation N")
    group.add_argument("--x-min", type=float)
    group.add_argument("--x-max", type=float)
    group.add_argument("--step", type=float)
    group.add_argument("--zero-count", type=int)
    group.add_argument("--trivial-terms", type=int)
    group.add_argument("--output-dir")
    group.add_argument("--format", choices=["csv", "svg", "both"])
    group.add_argument("--precision-mode", choices=["double", "validated"])
    group.add_argument("--max-workers", type=int)
    group.add_argument("--block-size", type=int)
    group.add_argument("--validation-points", type=int)
    group.add_argument("--validation-tolerance", type=float)
    group.add_argument(
        "--cache",
        action="store_true",
        help="serve Moebius tables from the sieve cache",
    )
    group.add_argument("--log-level", default=None)
    group.add_argument(
        "--log-module",
        action="append",
        metavar="MODULE=LEVEL",
        help="per-module log level, e.g. app.services.precision=DEBUG",
    )
    group.add_argument("--json-logs", action="store_true")
    return common


def build_parser() -> ArgumentParser:
    common = _experiment_flags()
    parser = ArgumentParser(
        prog="critical-wave",
        description="Critical wave experiments: figures, reports, checks.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    sieve = commands.add_parser(
        "sieve", parents=[common], help="sieve the Moebius function"
    )
    sieve.add_argument("--limit", type=int, default=None)

    figure = commands.add_parser(
        "figure", parents=[common], help="write figure data"
    )
    figure.add_argument("--n", type=int, choices=range(1, 6), required=True)

    wave = commands.add_parser(
        "wave", parents=[common], help="write a single wave trace"
    )
    wave.add_argument("--kind", choices=WAVE_KINDS, default="psi")
    wave.add_argument("--zero-index", type=int, default=1)
    wave.add_argument("--real-part", type=float, default=0.5)
    wave.add_argument("--real-part-factor", action="store_true")

    ck = commands.add_parser(
        "ck", parents=[common], help="evaluate one coefficient"
    )
    ck.add_argument("--k", type=float, required=True)
    ck.add_argument(
        "--form", choices=[f.value for f in CoefficientForm], default="exact"
    )

    stability = commands.add_parser(
        "stability", parents=[common], help="solve the stability inequality"
    )
    stability.add_argument("--n-low", type=int, default=None)
    stability.add_argument("--n-high", type=int, default=None)
    stability.add_argument("--amplitude", type=float, default=None)
    stability.add_argument("--tolerance", type=float, default=None)
    stability.add_argument(
        "--tail", choices=[t.value for t in TailSource], default="integral"
    )
    stability.add_argument(
        "--halving", type=int, nargs="*", default=None,
        help="truncations N for the amplitude halving thresholds",
    )

    reciprocal = commands.add_parser(
        "reciprocal", parents=[common], help="reconstruct 1/zeta(s)"
    )
    reciprocal.add_argument("--s", type=parse_complex, default=complex(2))
    reciprocal.add_argument("--k-max", type=int, default=None)

    commands.add_parser(
        "oscillations", parents=[common], help="count oscillations of psi"
    )

    report = commands.add_parser(
        "report", parents=[common], help="write an aggregate report"
    )
    report.add_argument("--kind", choices=REPORT_KINDS, required=True)
    report.add_argument("--s", type=parse_complex, default=None)
    report.add_argument("--k-max", type=int, default=None)
    report.add_argument("--n-high", type=int, default=None)
    return parser


class Application:
    """One CLI invocation: configuration, shared workbench, command."""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.config: Optional[ExperimentConfig] = None
        self._bench: Optional[Workbench] = None

    def initialize(self) -> None:
        args = self.args
        if args.log_level or args.json_logs or args.log_module:
            module_levels = (
                parse_module_levels(",".join(args.log_module))
                if args.log_module
                else None
            )
            setup_logging(
                level=args.log_level,
                use_json=args.json_logs or None,
                module_levels=module_levels,
            )
        file_values = load_config_file(args.config) if args.config else {}
        overrides: Dict[str, Any] = {
            key: getattr(args, key, None) for key in CONFIG_KEYS
        }
        self.config = build_experiment_config(file_values, overrides)
        logger.info(f"Running '{args.command}' ({settings.app_env})")

    @property
    def bench(self) -> Workbench:
        if self._bench is None:
            self._bench = Workbench.create(
                self.config, use_cache=self.args.cache
            )
        return self._bench

    def run(self) -> int:
        handler = getattr(self, f"cmd_{self.args.command}")
        handler()
        return EXIT_OK

    def cmd_sieve(self) -> None:
        limit = self.args.limit or self.config.params.truncation
        if self.args.cache:
            table = SieveCache().get_or_build(limit)
        else:
            table = moebius_sieve(limit)
        squarefree = int((table.values[1:] != 0).sum())
        print(f"limit = {table.limit}")
        print(f"squarefree = {squarefree}")
        print(f"mertens = {table.mertens()}")

    def cmd_figure(self) -> None:
        for path in run_figure(self.args.n, self.config, self.bench):
            print(path)

    def cmd_wave(self) -> None:
        args = self.args
        params = self.config.params
        wave = self.bench.wave
        if args.kind == "psi":
            trace = wave.psi(params)
        elif args.kind == "log":
            trace = wave.psi_log_corrected(params)
        elif args.kind == "g":
            trace = wave.g_trivial(params, self.config.trivial_terms)
        elif args.kind == "r":
            trace = wave.r_nontrivial(
                params, args.zero_index, args.real_part, args.real_part_factor
            )
        else:
            trace = wave.nontrivial_sum(
                params,
                self.config.zero_count,
                args.real_part,
                args.real_part_factor,
            )
            if trace is None:
                raise ValidationError(
                    "zero_count must be >= 1 for kind 'zeros'",
                    field="zero_count",
                )
        self.bench.validate(trace)
        header = {"trace": trace.label, "validity": trace.validity}
        header.update(self.config.header())
        path = write_series_csv(
            self.config.output_dir / f"wave_{args.kind}.csv",
            trace.x,
            [(trace.label, trace.values)],
            header,
        )
        print(path)

    def cmd_ck(self) -> None:
        params = self.config.params
        service = CoefficientService(self.bench.table)
        value = service.coefficient(
            self.args.k,
            params.alpha,
            params.beta,
            params.truncation,
            CoefficientForm(self.args.form),
        )
        print(repr(value))

    def _stability_problem(self) -> StabilityProblem:
        args = self.args
        fields = {
            "rho": args.rho,
            "n_low": args.n_low,
            "n_high": args.n_high,
            "amplitude": args.amplitude,
            "relative_tolerance": args.tolerance,
        }
        return StabilityProblem(
            alpha=self.config.params.alpha,
            beta=self.config.params.beta,
            tail_source=TailSource(args.tail),
            **{k: v for k, v in fields.items() if v is not None},
        )

    def cmd_stability(self) -> None:
        problem = self._stability_problem()
        service = StabilityService()
        report = service.solve_stability_threshold(problem)
        for key, value in report.as_rows():
            print(f"{key} = {value}")
        if self.args.halving:
            for n, threshold in service.amplitude_halving_thresholds(
                problem, self.args.halving
            ):
                print(f"halving N={n}: x > {threshold!r}")

    def cmd_reciprocal(self) -> None:
        paths = run_report(
            "reciprocal",
            self.config,
            self.bench,
            s=self.args.s,
            k_max=self.args.k_max,
        )
        print(paths[0].read_text(encoding="utf-8"))

    def cmd_oscillations(self) -> None:
        trace = self.bench.wave.psi(self.config.params)
        self.bench.validate(trace)
        report = analyze_oscillations(trace)
        for key, value in report.summary().items():
            print(f"{key} = {value}")

    def cmd_report(self) -> None:
        args = self.args
        options = {"s": args.s, "k_max": args.k_max, "n_high": args.n_high}
        for path in run_report(args.kind, self.config, self.bench, **options):
            print(path)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse arguments, run one command and map failures to exit codes.

    Returns:
        0 on success, 1 for invalid arguments, 2 for non-convergent or
        failed-validation numerics, 3 for I/O errors
    """
    args = build_parser().parse_args(argv)
    app = Application(args)
    try:
        app.initialize()
        return app.run()
    except (TrivialZeroPole, ConvergenceError) as e:
        logger.error(f"{e.code}: {e.message}")
        print(f"error: {e.message}", file=sys.stderr)
        return EXIT_NONCONVERGENT
    except (SieveCacheError, OutputError) as e:
        logger.error(f"{e.code}: {e.message} (path={e.path})")
        print(f"error: {e.message}", file=sys.stderr)
        return EXIT_IO
    except (ConfigurationError, ValidationError, DomainError) as e:
        logger.error(f"{e.code}: {e.message}")
        print(f"error: {e.message}", file=sys.stderr)
        return EXIT_INVALID
    except CriticalWaveException as e:
        logger.error(f"{e.code}: {e.message}")
        print(f"error: {e.message}", file=sys.stderr)
        return EXIT_INVALID
    except (PydanticValidationError, ValueError) as e:
        logger.error(f"Invalid arguments: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as e:
        logger.error(f"I/O error: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO


__all__ = [
    "EXIT_OK",
    "EXIT_INVALID",
    "EXIT_NONCONVERGENT",
    "EXIT_IO",
    "parse_complex",
    "build_parser",
    "Application",
    "main",
]
