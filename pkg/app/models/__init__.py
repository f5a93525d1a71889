"""Domain models for the critical wave application."""

from app.models.experiment import ExperimentConfig, OutputFormat, PrecisionMode
from app.models.moebius import MoebiusTable
from app.models.queries import (
    CoefficientForm,
    CoefficientQuery,
    PochhammerQuery,
    ReciprocalQuery,
)
from app.models.results import (
    BoundDiagnostic,
    DecayFit,
    DerivativeCheck,
    FluctuationBound,
    PochhammerValue,
    PoissonCheck,
    ReciprocalResult,
)
from app.models.stability import (
    PRINTED_TAIL_CONSTANT,
    BoundReport,
    StabilityProblem,
    TailSource,
)
from app.models.wave import (
    Extremum,
    OscillationReport,
    TraceKind,
    WaveParams,
    WaveTrace,
)
from app.models.zeros import NontrivialZero, ZeroSet

__all__ = [
    "MoebiusTable",
    "NontrivialZero",
    "ZeroSet",
    "WaveParams",
    "TraceKind",
    "WaveTrace",
    "Extremum",
    "OscillationReport",
    "PochhammerQuery",
    "CoefficientForm",
    "CoefficientQuery",
    "ReciprocalQuery",
    "PochhammerValue",
    "BoundDiagnostic",
    "FluctuationBound",
    "DecayFit",
    "DerivativeCheck",
    "PoissonCheck",
    "ReciprocalResult",
    "PRINTED_TAIL_CONSTANT",
    "TailSource",
    "StabilityProblem",
    "BoundReport",
    "ExperimentConfig",
    "OutputFormat",
    "PrecisionMode",
]
