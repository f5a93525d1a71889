"""Tests for the command-line surface: config files, writers, figures,
reports and exit codes."""

import csv

import numpy as np
import pytest

from app.exceptions import ConfigurationError, OutputError, ValidationError
from cli.config_file import (
    build_experiment_config,
    load_config_file,
    parse_config_text,
)
from cli.figures import FIGURE_RHOS, Workbench, build_figure, run_figure
from cli.main import (
    EXIT_INVALID,
    EXIT_IO,
    EXIT_NONCONVERGENT,
    EXIT_OK,
    main,
    parse_complex,
)
from cli.reports import run_report
from cli.writers import write_series_csv


def read_csv(path):
    """Split a written CSV into header comments and data rows."""
    lines = path.read_text(encoding="utf-8").splitlines()
    comments = [line for line in lines if line.startswith("#")]
    rows = list(csv.reader(line for line in lines if not line.startswith("#")))
    return comments, rows


@pytest.fixture
def small_config(output_dir):
    """Coarse grid so figure runs stay quick."""
    return build_experiment_config(
        overrides={"x_max": 3.0, "step": 0.5, "output_dir": output_dir}
    )


@pytest.fixture
def bench(small_config, table):
    return Workbench.create(small_config, table=table)


class TestConfigFile:
    """Test key=value experiment files."""

    def test_parse(self):
        """Test comments, blank lines and type conversion."""
        values = parse_config_text(
            "# experiment\nalpha = 5.5\n\nzero-count = 3  # two zeros\n"
        )
        assert values == {"alpha": 5.5, "zero_count": 3}

    def test_unknown_key(self):
        """Test unknown keys are rejected with their name."""
        with pytest.raises(ConfigurationError) as exc_info:
            parse_config_text("gamma = 1")
        assert exc_info.value.key == "gamma"

    def test_malformed_line(self):
        """Test lines without '=' are rejected."""
        with pytest.raises(ConfigurationError):
            parse_config_text("alpha 7.5")

    def test_bad_value(self):
        """Test values the key's type cannot hold."""
        with pytest.raises(ConfigurationError):
            parse_config_text("truncation = many")

    def test_missing_file(self, tmp_path):
        """Test a missing file is a configuration error."""
        with pytest.raises(ConfigurationError):
            load_config_file(tmp_path / "absent.conf")

    def test_precedence(self, output_dir):
        """Test CLI flags beat the file and unset flags fall through."""
        config = build_experiment_config(
            {"alpha": 5.0, "rho": 0.75},
            {"alpha": 6.0, "rho": None, "output_dir": output_dir},
        )
        assert config.params.alpha == 6.0
        assert config.params.rho == 0.75

    def test_unknown_override(self, output_dir):
        """Test overrides are limited to the known keys."""
        with pytest.raises(ConfigurationError):
            build_experiment_config(overrides={"gamma": 1.0})


class TestWriters:
    """Test deterministic file emission."""

    def test_series_csv(self, output_dir):
        """Test header block, column row and repr-formatted values."""
        path = write_series_csv(
            output_dir / "series.csv",
            np.array([0.0, 0.5]),
            [("y", np.array([0.1, -2.0]))],
            {"alpha": 7.5},
        )
        comments, rows = read_csv(path)
        assert comments == ["# alpha = 7.5"]
        assert rows == [["x", "y"], ["0.0", "0.1"], ["0.5", "-2.0"]]

    def test_unwritable_path(self, output_dir):
        """Test write failures become OutputError."""
        blocker = output_dir / "file"
        blocker.write_text("x")
        with pytest.raises(OutputError):
            write_series_csv(
                blocker / "nested.csv", np.array([0.0]), [], {}
            )


class TestFigures:
    """Test figure data assembly."""

    def test_figure_3_columns(self, small_config, bench):
        """Test x plus one psi column per rho."""
        [path] = run_figure(3, small_config, bench)
        _, rows = read_csv(path)
        assert len(rows[0]) == 1 + len(FIGURE_RHOS) == 8
        assert rows[0][0] == "x"
        assert len(rows) == 1 + 7

    def test_figure_4_positive_grid(self, bench):
        """Test the log-corrected wave starts at the first x > 0."""
        _, series, notes = build_figure(4, bench)
        trace = series[0][1]
        assert trace.x[0] == pytest.approx(0.5)
        assert notes["x_first"] > 0

    def test_figure_1_records_residual(self, small_config, bench):
        """Test the decomposition residual lands in the header."""
        [path] = run_figure(1, small_config, bench)
        comments, _ = read_csv(path)
        assert any(c.startswith("# residual_ratio") for c in comments)

    def test_deterministic(self, small_config, bench):
        """Test repeated runs write identical bytes."""
        [path] = run_figure(5, small_config, bench)
        first = path.read_bytes()
        run_figure(5, small_config, bench)
        assert path.read_bytes() == first

    def test_unknown_figure(self, bench):
        """Test figure numbers outside 1..5."""
        with pytest.raises(ValidationError):
            build_figure(6, bench)


class TestReports:
    """Test report files."""

    def test_stability_report(self, small_config, bench):
        """Test all three tail sources and the halving table appear."""
        text_path, csv_path = run_report("stability", small_config, bench)
        text = text_path.read_text(encoding="utf-8")
        for section in ("[printed tail]", "[integral tail]", "[direct tail]"):
            assert section in text
        assert "Amplitude halving thresholds" in text
        assert csv_path.exists()

    def test_reciprocal_report(self, small_config, bench):
        """Test the decade table and duality line."""
        text_path, _ = run_report(
            "reciprocal", small_config, bench, s=2.0, k_max=99
        )
        text = text_path.read_text(encoding="utf-8")
        assert "1/zeta(1 - s) via duality" in text
        assert "Convergence by decade" in text
        assert "tail beyond K" in text
        assert "error of limit" in text

    def test_reciprocal_trivial_zero_noted(self, small_config, bench):
        """Test a trivial-zero pole is reported, not raised."""
        text_path, _ = run_report(
            "reciprocal", small_config, bench, s=3.0, k_max=9
        )
        assert "duality:" in text_path.read_text(encoding="utf-8")


class TestMain:
    """Test argument parsing and exit codes."""

    def test_parse_complex(self):
        """Test both i and j suffixes."""
        assert parse_complex("0.5+14.13i") == complex(0.5, 14.13)
        assert parse_complex("2") == complex(2)

    def test_sieve(self, output_dir, capsys):
        """Test a successful command exits 0."""
        code = main(["sieve", "--limit", "100", "--output-dir", str(output_dir)])
        assert code == EXIT_OK
        assert "mertens = 1" in capsys.readouterr().out

    def test_invalid_arguments(self):
        """Test argparse failures exit 1."""
        with pytest.raises(SystemExit) as exc_info:
            main(["figure", "--n", "7"])
        assert exc_info.value.code == EXIT_INVALID

    def test_invalid_config_file(self, tmp_path, output_dir):
        """Test unknown config keys exit 1."""
        config = tmp_path / "bad.conf"
        config.write_text("gamma = 1\n")
        code = main(
            ["sieve", "--config", str(config), "--output-dir", str(output_dir)]
        )
        assert code == EXIT_INVALID

    def test_infeasible_stability(self, output_dir):
        """Test a non-convergent problem exits 2."""
        code = main(
            [
                "stability",
                "--amplitude", "1e-25",
                "--tail", "printed",
                "--output-dir", str(output_dir),
            ]
        )
        assert code == EXIT_NONCONVERGENT

    def test_output_failure(self, mocker, output_dir):
        """Test write failures exit 3."""
        mocker.patch(
            "cli.main.run_figure",
            side_effect=OutputError("disk full", output_dir / "figure1.csv"),
        )
        code = main(["figure", "--n", "1", "--output-dir", str(output_dir)])
        assert code == EXIT_IO

    def test_invalid_log_module(self, output_dir):
        """Test a malformed per-module log level exits 1."""
        code = main(
            [
                "sieve",
                "--limit", "10",
                "--log-module", "cli=LOUD",
                "--output-dir", str(output_dir),
            ]
        )
        assert code == EXIT_INVALID
