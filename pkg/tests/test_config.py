"""Tests for configuration module."""

from app.config import Settings, get_settings


class TestSettings:
    """Test Settings configuration."""

    def test_default_settings(self):
        """Test settings with defaults."""
        # Use _env_file=None to prevent env file loading
        settings = Settings(_env_file=None)
        assert settings.app_env == "development"
        assert settings.default_alpha == 7.5
        assert settings.default_beta == 4.0
        assert settings.default_rho == 0.5
        assert settings.moebius_limit == 2000
        assert settings.x_min == 0.0
        assert settings.x_max == 30.0
        assert settings.x_step == 0.01
        assert settings.zero_count == 2
        assert settings.trivial_terms == 20

    def test_settings_from_env(self, monkeypatch):
        """Test settings loaded from environment variables."""
        monkeypatch.setenv("APP_ENV", "production")
        monkeypatch.setenv("WAVE_ALPHA", "2")
        monkeypatch.setenv("WAVE_BETA", "2")
        monkeypatch.setenv("MOEBIUS_LIMIT", "50000")
        monkeypatch.setenv("PRECISION_MODE", "validated")

        settings = Settings(_env_file=None)
        assert settings.app_env == "production"
        assert settings.default_alpha == 2.0
        assert settings.default_beta == 2.0
        assert settings.moebius_limit == 50000
        assert settings.precision_mode == "validated"

    def test_log_level_valid_values(self):
        """Test log level has valid value."""
        settings = Settings(_env_file=None)
        assert settings.app_log_level in [
            "DEBUG",
            "INFO",
            "WARNING",
            "ERROR",
            "CRITICAL",
        ]

    def test_logs_directory_creation(self):
        """Test logs directory is created."""
        settings = Settings(_env_file=None)
        assert settings.logs_dir.exists()

    def test_worker_defaults(self):
        """Test worker pool defaults."""
        settings = Settings(_env_file=None)
        assert settings.max_concurrent_workers == 4
        assert settings.block_size == 256

    def test_output_dir_from_env(self, tmp_path, monkeypatch):
        """Test output and cache directories follow the environment."""
        monkeypatch.setenv("OUTPUT_DIR", str(tmp_path / "out"))
        monkeypatch.setenv("CACHE_DIR", str(tmp_path / "cache"))
        settings = Settings(_env_file=None)
        assert settings.output_dir == tmp_path / "out"
        assert settings.cache_dir == tmp_path / "cache"

    def test_get_settings(self):
        """Test get_settings returns a Settings instance."""
        assert isinstance(get_settings(), Settings)
