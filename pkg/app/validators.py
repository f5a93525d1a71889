"""Validation utilities for numerical arguments."""

import math
import os
from pathlib import Path
from typing import Any, Iterable, List

from app.exceptions import ValidationError


class Validator:
    """Validation utilities for the arguments shared across services."""

    @staticmethod
    def validate_positive_int(
        value: Any, field_name: str = "value", minimum: int = 1
    ) -> int:
        """
        Validate an integer bounded below.

        Args:
            value: Candidate value (int or integral float/str)
            field_name: Name of the field for error message
            minimum: Smallest accepted value

        Returns:
            Integer value

        Raises:
            ValidationError: If value is not an integer >= minimum
        """
        if isinstance(value, bool) or value is None or value == "":
            raise ValidationError(
                f"{field_name} must be an integer, got {value!r}",
                field=field_name,
            )
        try:
            as_float = float(value)
        except (TypeError, ValueError):
            raise ValidationError(
                f"{field_name} must be an integer, got {value!r}",
                field=field_name,
            )
        if not math.isfinite(as_float) or as_float != int(as_float):
            raise ValidationError(
                f"{field_name} must be an integer, got {value!r}",
                field=field_name,
            )
        as_int = int(as_float) if not isinstance(value, int) else value
        if as_int < minimum:
            raise ValidationError(
                f"{field_name} must be >= {minimum}, got {as_int}",
                field=field_name,
            )
        return as_int

    @staticmethod
    def validate_real(
        value: Any,
        field_name: str = "value",
        greater_than: float = -math.inf,
    ) -> float:
        """
        Validate a finite real number strictly above a bound.

        Args:
            value: Candidate value
            field_name: Name of the field for error message
            greater_than: Exclusive lower bound

        Returns:
            Float value

        Raises:
            ValidationError: If value is not finite or not above the bound
        """
        try:
            as_float = float(value)
        except (TypeError, ValueError):
            raise ValidationError(
                f"{field_name} must be a real number, got {value!r}",
                field=field_name,
            )
        if not math.isfinite(as_float):
            raise ValidationError(
                f"{field_name} must be finite, got {value!r}",
                field=field_name,
            )
        if as_float <= greater_than:
            raise ValidationError(
                f"{field_name} must be > {greater_than}, got {as_float}",
                field=field_name,
            )
        return as_float

    @staticmethod
    def validate_alpha(alpha: Any) -> float:
        """
        Validate the Moebius weight exponent.

        Sum mu(n)/n^alpha converges absolutely only for alpha > 1.

        Raises:
            ValidationError: If alpha <= 1
        """
        return Validator.validate_real(alpha, "alpha", greater_than=1.0)

    @staticmethod
    def validate_beta(beta: Any) -> float:
        """Validate the Pochhammer scale parameter (beta > 0)."""
        return Validator.validate_real(beta, "beta", greater_than=0.0)

    @staticmethod
    def validate_fraction(value: Any, field_name: str) -> float:
        """
        Validate a value in the open interval (0, 1).

        Raises:
            ValidationError: If value is outside (0, 1)
        """
        as_float = Validator.validate_real(value, field_name, greater_than=0.0)
        if as_float >= 1.0:
            raise ValidationError(
                f"{field_name} must be < 1, got {as_float}",
                field=field_name,
            )
        return as_float

    @staticmethod
    def validate_grid(x_min: float, x_max: float, step: float) -> int:
        """
        Validate an x-grid description.

        Args:
            x_min: First grid point
            x_max: Last grid point (inclusive up to rounding)
            step: Positive spacing

        Returns:
            Number of grid points

        Raises:
            ValidationError: If the grid is empty or step is not positive
        """
        step = Validator.validate_real(step, "step", greater_than=0.0)
        x_min = Validator.validate_real(x_min, "x_min")
        x_max = Validator.validate_real(x_max, "x_max")
        if x_max < x_min:
            raise ValidationError(
                f"x_max ({x_max}) must be >= x_min ({x_min})",
                field="x_max",
            )
        return int(math.floor((x_max - x_min) / step + 1e-9)) + 1

    @staticmethod
    def validate_k_grid(k_grid: Iterable[Any]) -> List[int]:
        """
        Validate a nonempty list of integers k >= 1.

        Raises:
            ValidationError: If the grid is empty or holds an entry < 1
        """
        values = [
            Validator.validate_positive_int(k, "k_grid") for k in k_grid
        ]
        if not values:
            raise ValidationError("k_grid must be nonempty", field="k_grid")
        return values

    @staticmethod
    def validate_output_dir(path: Any) -> Path:
        """
        Validate (and create) a writable output directory.

        Raises:
            ValidationError: If the directory cannot be created or written
        """
        directory = Path(path)
        try:
            directory.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            raise ValidationError(
                f"Cannot create output directory {directory}: {e}",
                field="output_dir",
            )
        if not os.access(directory, os.W_OK):
            raise ValidationError(
                f"Output directory {directory} is not writable",
                field="output_dir",
            )
        return directory


__all__ = ["Validator"]
