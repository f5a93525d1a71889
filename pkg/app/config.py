"""Configuration management for the critical wave application."""

import os
from pathlib import Path

from pydantic import Field
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    # Application
    app_name: str = "Critical Wave Lab"
    app_env: str = Field(default="development", validation_alias="APP_ENV")
    app_log_level: str = Field(
        default="INFO", validation_alias="APP_LOG_LEVEL",
    )
    app_log_json: bool = Field(default=False, validation_alias="APP_LOG_JSON")
    # e.g. "app.services.precision=DEBUG,cli=WARNING"
    app_log_levels: str = Field(default="", validation_alias="APP_LOG_LEVELS")

    # Wave parameters
    default_alpha: float = Field(default=7.5, validation_alias="WAVE_ALPHA")
    default_beta: float = Field(default=4.0, validation_alias="WAVE_BETA")
    default_rho: float = Field(default=0.5, validation_alias="WAVE_RHO")
    x_min: float = Field(default=0.0, validation_alias="WAVE_X_MIN")
    x_max: float = Field(default=30.0, validation_alias="WAVE_X_MAX")
    x_step: float = Field(default=0.01, validation_alias="WAVE_X_STEP")

    # Moebius sieve
    moebius_limit: int = Field(default=2000, validation_alias="MOEBIUS_LIMIT")
    moebius_max_limit: int = Field(
        default=10**9, validation_alias="MOEBIUS_MAX_LIMIT"
    )
    sieve_segment_size: int = Field(
        default=1 << 22, validation_alias="SIEVE_SEGMENT_SIZE"
    )

    # Zeta zeros
    zero_count: int = Field(default=2, validation_alias="ZERO_COUNT")
    trivial_terms: int = Field(default=20, validation_alias="TRIVIAL_TERMS")

    # Worker pool
    max_concurrent_workers: int = Field(
        default=4,
        validation_alias="MAX_CONCURRENT_WORKERS"
    )
    block_size: int = Field(default=256, validation_alias="BLOCK_SIZE")

    # High precision validation
    precision_mode: str = Field(
        default="double", validation_alias="PRECISION_MODE"
    )
    validation_points: int = Field(
        default=5, validation_alias="VALIDATION_POINTS"
    )
    validation_tolerance: float = Field(
        default=1e-9, validation_alias="VALIDATION_TOLERANCE"
    )

    # Paths
    project_root: Path = Path(__file__).parent.parent
    logs_dir: Path = Field(
        default_factory=lambda: Path(__file__).parent.parent / "logs"
    )
    output_dir: Path = Field(
        default_factory=lambda: Path.cwd() / "output",
        validation_alias="OUTPUT_DIR",
    )
    cache_dir: Path = Field(
        default_factory=lambda: Path(__file__).parent.parent / ".cache",
        validation_alias="CACHE_DIR",
    )

    class Config:
        # Load .env.test during testing, .env otherwise
        if os.getenv("PYTEST_RUNNING"):
            env_file = ".env.test"
        else:
            env_file = ".env"
        case_sensitive = False
        extra = "allow"

    def __init__(self, **data):
        super().__init__(**data)
        # Ensure logs directory exists
        self.logs_dir.mkdir(exist_ok=True, parents=True)


def get_settings() -> Settings:
    """Get the application settings singleton."""
    return Settings()


settings = get_settings()

__all__ = ["Settings", "get_settings", "settings"]
