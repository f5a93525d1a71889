"""Experiment configuration shared by the figure and report commands."""

from enum import Enum
from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field, field_validator

from app.exceptions import ValidationError
from app.models.wave import WaveParams
from app.validators import Validator


class OutputFormat(str, Enum):
    CSV = "csv"
    SVG = "svg"
    BOTH = "both"


class PrecisionMode(str, Enum):
    DOUBLE = "double"
    VALIDATED = "validated"


class ExperimentConfig(BaseModel):
    """Everything one figure or report run depends on."""

    model_config = ConfigDict(frozen=True)

    params: WaveParams = Field(default_factory=WaveParams)
    zero_count: int = Field(default=2, ge=0, le=10)
    trivial_terms: int = Field(default=20, ge=1, le=20)
    output_dir: Path
    format: OutputFormat = OutputFormat.CSV
    precision_mode: PrecisionMode = PrecisionMode.DOUBLE
    max_workers: int = Field(default=4, ge=1)
    block_size: int = Field(default=256, ge=1)
    validation_points: int = Field(default=5, ge=1)
    validation_tolerance: float = Field(default=1e-9, gt=0)

    @field_validator("output_dir")
    @classmethod
    def _writable_output_dir(cls, value: Path) -> Path:
        try:
            return Validator.validate_output_dir(value)
        except ValidationError as e:
            raise ValueError(e.message)

    @property
    def wants_csv(self) -> bool:
        return self.format in (OutputFormat.CSV, OutputFormat.BOTH)

    @property
    def wants_svg(self) -> bool:
        return self.format in (OutputFormat.SVG, OutputFormat.BOTH)

    def header(self) -> dict:
        """Full configuration, flattened for report headers."""
        items = dict(self.params.describe())
        items.update(
            {
                "zero_count": self.zero_count,
                "trivial_terms": self.trivial_terms,
                "precision_mode": self.precision_mode.value,
                "format": self.format.value,
            }
        )
        return items


__all__ = ["OutputFormat", "PrecisionMode", "ExperimentConfig"]
