"""Tests for validation module."""

import os
import stat

import pytest

from app.exceptions import ValidationError
from app.validators import Validator


class TestPositiveIntValidation:
    """Test integer validation."""

    def test_valid_integers(self):
        """Test valid integer inputs."""
        for value in [1, 7, "12", 3.0]:
            result = Validator.validate_positive_int(value, "n")
            assert isinstance(result, int)
            assert result >= 1

    def test_minimum(self):
        """Test custom minimum."""
        assert Validator.validate_positive_int(0, "k", minimum=0) == 0
        with pytest.raises(ValidationError) as exc_info:
            Validator.validate_positive_int(-1, "k", minimum=0)
        assert exc_info.value.field == "k"

    def test_invalid_integers(self):
        """Test rejected values."""
        for value in [None, "", "abc", 2.5, True, float("inf")]:
            with pytest.raises(ValidationError):
                Validator.validate_positive_int(value, "n")


class TestRealValidation:
    """Test real number validation."""

    def test_valid_real(self):
        """Test finite reals above the bound."""
        assert Validator.validate_real("2.5", "x") == 2.5
        assert Validator.validate_real(1, "x", greater_than=0.0) == 1.0

    def test_not_finite(self):
        """Test infinities and NaN are rejected."""
        for value in [float("inf"), float("nan"), "-inf"]:
            with pytest.raises(ValidationError):
                Validator.validate_real(value, "x")

    def test_bound_is_exclusive(self):
        """Test the lower bound itself is rejected."""
        with pytest.raises(ValidationError):
            Validator.validate_real(0.0, "x", greater_than=0.0)


class TestParameterValidation:
    """Test alpha, beta and fraction validation."""

    def test_alpha(self):
        """Test alpha must exceed 1."""
        assert Validator.validate_alpha(7.5) == 7.5
        with pytest.raises(ValidationError) as exc_info:
            Validator.validate_alpha(1.0)
        assert exc_info.value.field == "alpha"

    def test_beta(self):
        """Test beta must be positive."""
        assert Validator.validate_beta(4) == 4.0
        for value in [0, -1]:
            with pytest.raises(ValidationError):
                Validator.validate_beta(value)

    def test_fraction(self):
        """Test open unit interval."""
        assert Validator.validate_fraction(0.5, "tol") == 0.5
        for value in [0.0, 1.0, 2.0]:
            with pytest.raises(ValidationError):
                Validator.validate_fraction(value, "tol")


class TestGridValidation:
    """Test x-grid validation."""

    def test_default_grid_count(self):
        """Test [0, 30] with step 0.01 has 3001 points."""
        assert Validator.validate_grid(0.0, 30.0, 0.01) == 3001

    def test_single_point(self):
        """Test a degenerate grid holds one point."""
        assert Validator.validate_grid(1.0, 1.0, 0.5) == 1

    def test_reversed_grid(self):
        """Test x_max below x_min."""
        with pytest.raises(ValidationError) as exc_info:
            Validator.validate_grid(5.0, 1.0, 0.1)
        assert exc_info.value.field == "x_max"

    def test_bad_step(self):
        """Test non-positive steps."""
        with pytest.raises(ValidationError):
            Validator.validate_grid(0.0, 1.0, 0.0)

    def test_k_grid(self):
        """Test k-grid validation."""
        assert Validator.validate_k_grid([1, 2, 4]) == [1, 2, 4]
        with pytest.raises(ValidationError):
            Validator.validate_k_grid([])
        with pytest.raises(ValidationError):
            Validator.validate_k_grid([0, 1])


class TestOutputDirValidation:
    """Test output directory validation."""

    def test_creates_directory(self, tmp_path):
        """Test missing directories are created."""
        target = tmp_path / "a" / "b"
        result = Validator.validate_output_dir(target)
        assert result == target
        assert target.is_dir()

    @pytest.mark.skipif(
        hasattr(os, "geteuid") and os.geteuid() == 0,
        reason="root can write anywhere",
    )
    def test_read_only_directory(self, tmp_path):
        """Test a read-only directory is rejected."""
        target = tmp_path / "ro"
        target.mkdir()
        target.chmod(stat.S_IRUSR | stat.S_IXUSR)
        try:
            with pytest.raises(ValidationError) as exc_info:
                Validator.validate_output_dir(target)
            assert exc_info.value.field == "output_dir"
        finally:
            target.chmod(stat.S_IRWXU)
