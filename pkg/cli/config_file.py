"""Flat key=value experiment files merged with settings and CLI flags."""

from pathlib import Path
from typing import Any, Callable, Dict, Mapping, Optional, Union

from app.config import Settings, settings
from app.exceptions import ConfigurationError
from app.logging_config import get_logger
from app.models import ExperimentConfig, WaveParams

logger = get_logger(__name__)

# key -> converter; every key is also a CLI flag of the same name
CONFIG_KEYS: Dict[str, Callable[[str], Any]] = {
    "alpha": float,
    "beta": float,
    "rho": float,
    "truncation": int,
    "x_min": float,
    "x_max": float,
    "step": float,
    "zero_count": int,
    "trivial_terms": int,
    "output_dir": Path,
    "format": str,
    "precision_mode": str,
    "max_workers": int,
    "block_size": int,
    "validation_points": int,
    "validation_tolerance": float,
}

_PARAM_KEYS = ("alpha", "beta", "rho", "truncation", "x_min", "x_max", "step")


def settings_defaults(base: Optional[Settings] = None) -> Dict[str, Any]:
    """Experiment keys as currently configured by the environment."""
    base = base or settings
    return {
        "alpha": base.default_alpha,
        "beta": base.default_beta,
        "rho": base.default_rho,
        "truncation": base.moebius_limit,
        "x_min": base.x_min,
        "x_max": base.x_max,
        "step": base.x_step,
        "zero_count": base.zero_count,
        "trivial_terms": base.trivial_terms,
        "output_dir": base.output_dir,
        "format": "csv",
        "precision_mode": base.precision_mode,
        "max_workers": base.max_concurrent_workers,
        "block_size": base.block_size,
        "validation_points": base.validation_points,
        "validation_tolerance": base.validation_tolerance,
    }


def parse_config_text(text: str, source: str = "<string>") -> Dict[str, Any]:
    """
    Parse key=value lines; blank lines and '#' comments are skipped.

    Raises:
        ConfigurationError: For malformed lines, unknown keys or values the
            key's type cannot hold
    """
    values: Dict[str, Any] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationError(
                f"{source}:{number}: expected key = value, got {raw!r}"
            )
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.lower().replace("-", "_")
        converter = CONFIG_KEYS.get(key)
        if converter is None:
            raise ConfigurationError(
                f"{source}:{number}: unknown key '{key}'", key=key
            )
        try:
            values[key] = converter(value)
        except ValueError:
            raise ConfigurationError(
                f"{source}:{number}: invalid value {value!r} for '{key}'",
                key=key,
            )
    return values


def load_config_file(path: Union[str, Path]) -> Dict[str, Any]:
    """
    Read an experiment file.

    Raises:
        ConfigurationError: If the file is missing, unreadable or invalid
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigurationError(f"Cannot read config file {path}: {e}")
    values = parse_config_text(text, source=str(path))
    logger.info(f"Loaded {len(values)} keys from {path}")
    return values


def build_experiment_config(
    file_values: Optional[Mapping[str, Any]] = None,
    overrides: Optional[Mapping[str, Any]] = None,
    base: Optional[Settings] = None,
) -> ExperimentConfig:
    """
    Merge settings < file < overrides into an ExperimentConfig.

    Overrides set to None are ignored, so unset CLI flags fall through.

    Raises:
        ConfigurationError: For unknown override keys
        pydantic.ValidationError: If the merged values are out of range
    """
    merged = settings_defaults(base)
    merged.update(file_values or {})
    for key, value in (overrides or {}).items():
        if key not in CONFIG_KEYS:
            raise ConfigurationError(f"unknown key '{key}'", key=key)
        if value is not None:
            merged[key] = value

    params = WaveParams(**{key: merged[key] for key in _PARAM_KEYS})
    return ExperimentConfig(
        params=params,
        **{key: merged[key] for key in CONFIG_KEYS if key not in _PARAM_KEYS},
    )


__all__ = [
    "CONFIG_KEYS",
    "settings_defaults",
    "parse_config_text",
    "load_config_file",
    "build_experiment_config",
]
