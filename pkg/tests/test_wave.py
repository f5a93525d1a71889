"""Tests for the critical wave and its zero decomposition."""

import math

import numpy as np
import pytest
from scipy import special

from app.exceptions import ValidationError
from app.models import TraceKind, WaveParams
from app.services.numtheory import ZERO_ORDINATES, zeta_prime_trivial
from app.services.oscillations import analyze_oscillations
from app.services.parallel import BlockExecutor
from app.services.wave import CriticalWaveService, composite, fraction_label


class TestFractionLabel:
    """Test caption labels for rho."""

    def test_labels(self):
        """Test simple fractions."""
        assert fraction_label(0.5) == "1/2"
        assert fraction_label(0.3) == "3/10"
        assert fraction_label(0.875) == "7/8"
        assert fraction_label(1.0) == "1"


class TestPsi:
    """Test psi traces."""

    def test_default_trace(self, psi_half):
        """Test grid, kind and label of psi_{1/2}."""
        assert len(psi_half) == 3001
        assert psi_half.kind is TraceKind.PSI
        assert psi_half.label == "psi_1/2"
        assert psi_half.validity == "valid"
        assert psi_half.x[0] == 0.0
        assert psi_half.x[-1] == pytest.approx(30.0)

    def test_values_from_inner_sum(self, psi_half, default_params):
        """Test psi = e^{((alpha - rho)/beta) x} times the inner sum."""
        expected = np.exp(default_params.exponent * psi_half.x) * psi_half.inner
        assert np.array_equal(psi_half.values, expected)

    def test_inner_sum_at_zero(self, psi_half, table):
        """Test the inner sum at x = 0 directly."""
        n, mu = table.squarefree_support(2000)
        n = n.astype(float)
        expected = math.fsum(mu * n**-7.5 * np.exp(-1.0 / n**4))
        assert psi_half.inner[0] == pytest.approx(expected, rel=1e-14)

    def test_rescaling_shares_inner_sum(self, wave_service, default_params):
        """Test traces for different rho share one inner sum bit for bit."""
        a = wave_service.psi(default_params.with_rho(0.5))
        b = wave_service.psi(default_params.with_rho(0.75))
        assert np.array_equal(a.inner, b.inner)
        factor = np.exp(((0.5 - 0.75) / 4.0) * a.x)
        assert np.allclose(b.values, a.values * factor, rtol=1e-13, atol=0)

    def test_worker_count_independent(self, table, zero_set):
        """Test results are bit-identical for any worker layout."""
        params = WaveParams(x_max=10.0, step=0.05)
        serial = CriticalWaveService(table, zero_set, BlockExecutor(1, 7))
        pooled = CriticalWaveService(table, zero_set, BlockExecutor(8, 13))
        assert np.array_equal(
            serial.psi(params).values, pooled.psi(params).values
        )

    def test_below_half_flagged(self, wave_service, default_params):
        """Test rho < 1/2 is labelled outside representation validity."""
        trace = wave_service.psi(default_params.with_rho(0.3))
        assert trace.validity == "outside representation validity"
        assert trace.label == "psi_3/10"

    def test_read_only(self, psi_half):
        """Test trace arrays are immutable."""
        with pytest.raises(ValueError):
            psi_half.values[0] = 1.0

    def test_window(self, psi_half):
        """Test sub-traces."""
        window = psi_half.window(5.0, 6.0)
        assert window.x[0] >= 5.0
        assert window.x[-1] <= 6.0
        assert 100 <= len(window) <= 101


class TestLogCorrected:
    """Test psi_{rho+}."""

    def test_requires_positive_grid(self, wave_service, default_params):
        """Test x <= 0 is rejected."""
        with pytest.raises(ValidationError) as exc_info:
            wave_service.psi_log_corrected(default_params)
        assert exc_info.value.field == "x_min"

    def test_equals_psi_over_x(self, wave_service):
        """Test psi_{rho+}(x) = psi(x)/x."""
        params = WaveParams(x_min=1.0, x_max=20.0, step=0.1)
        corrected = wave_service.psi_log_corrected(params)
        plain = wave_service.psi(params)
        assert corrected.label == "psi_1/2+(x)"
        assert np.allclose(
            corrected.values, plain.values / plain.x, rtol=1e-13, atol=0
        )


class TestTrivialContribution:
    """Test g_rho."""

    def test_label(self, wave_service, default_params):
        """Test the caption label."""
        assert wave_service.g_trivial(default_params).label == "g_1/2(x)"

    def test_series_converged(self, wave_service, default_params):
        """Test the twentieth term no longer matters at x = 1."""
        g20 = wave_service.g_trivial(default_params, 20)
        g19 = wave_service.g_trivial(default_params, 19)
        i = 100
        assert g20.x[i] == pytest.approx(1.0)
        assert abs(g20.values[i] - g19.values[i]) <= 1e-12 * abs(g20.values[i])

    def test_first_term(self, wave_service, default_params):
        """Test a single term against its closed form."""
        g1 = wave_service.g_trivial(default_params, 1)
        x = g1.x[500]
        expected = (
            math.exp(-(2.5 / 4.0) * x)
            * special.gamma(9.5 / 4.0)
            / zeta_prime_trivial(1)
            / 4.0
        )
        assert g1.values[500] == pytest.approx(expected, rel=1e-13)

    def test_term_count_range(self, wave_service, default_params):
        """Test n_terms outside 1..20."""
        for n_terms in [0, 21]:
            with pytest.raises(ValidationError):
                wave_service.g_trivial(default_params, n_terms)


class TestNontrivialContribution:
    """Test r_j and their sums."""

    def test_period(self, wave_service, default_params):
        """Test r_1 oscillates with period 2 pi beta / t_1."""
        r1 = wave_service.r_nontrivial(default_params, 1)
        report = analyze_oscillations(r1)
        expected = 2 * math.pi * 4.0 / ZERO_ORDINATES[0]
        assert report.period == pytest.approx(expected, rel=0.01)
        assert r1.label == "r1(x)"
        assert r1.zero_index == 1

    def test_constant_amplitude(self, wave_service, default_params):
        """Test the literal form has constant amplitude."""
        r1 = wave_service.r_nontrivial(default_params, 1)
        head = np.max(np.abs(r1.window(0.0, 5.0).values))
        tail = np.max(np.abs(r1.window(25.0, 30.0).values))
        assert head == pytest.approx(tail, rel=1e-3)

    def test_real_part_factor(self, wave_service, default_params):
        """Test the residue factor e^{((Re z - rho)/beta) x}."""
        params = default_params.with_rho(0.75)
        plain = wave_service.r_nontrivial(params, 1, real_part=0.75)
        scaled = wave_service.r_nontrivial(
            params, 1, real_part=0.75, real_part_factor=True
        )
        assert np.array_equal(plain.values, scaled.values)

        half = wave_service.r_nontrivial(
            params, 1, real_part=0.5, real_part_factor=True
        )
        literal = wave_service.r_nontrivial(params, 1, real_part=0.5)
        factor = np.exp(((0.5 - 0.75) / 4.0) * half.x)
        assert np.allclose(half.values, literal.values * factor, rtol=1e-14)

    def test_sum(self, wave_service, default_params):
        """Test r_1 + r_2 and the empty sum."""
        total = wave_service.nontrivial_sum(default_params, 2)
        r1 = wave_service.r_nontrivial(default_params, 1)
        r2 = wave_service.r_nontrivial(default_params, 2)
        assert total.label == "r1(x)+r2(x)"
        assert np.allclose(total.values, r1.values + r2.values, rtol=0, atol=1e-15)
        assert wave_service.nontrivial_sum(default_params, 0) is None

    def test_unknown_zero(self, wave_service, default_params):
        """Test an index beyond the zero set."""
        with pytest.raises(ValidationError):
            wave_service.r_nontrivial(default_params, 3)


class TestDecomposition:
    """Test psi against its trivial and nontrivial contributions."""

    def test_figure_one_agreement(self, wave_service, default_params, psi_half):
        """Test max |(psi - r1 - r2) - g| <= 25% of max |g| on [5, 30]."""
        g = wave_service.g_trivial(default_params)
        r = wave_service.nontrivial_sum(default_params, 2)
        lhs = composite([(1.0, psi_half), (-1.0, r)], "lhs")
        mask = (lhs.x >= 5.0) & (lhs.x <= 30.0)
        residual = np.max(np.abs(lhs.values[mask] - g.values[mask]))
        assert residual <= 0.25 * np.max(np.abs(g.values[mask]))

    def test_composite_grid_mismatch(self, wave_service, default_params):
        """Test traces on different grids cannot be combined."""
        a = wave_service.r_nontrivial(default_params, 1)
        b = wave_service.r_nontrivial(WaveParams(x_max=10.0), 1)
        with pytest.raises(ValidationError):
            composite([(1.0, a), (1.0, b)], "bad")

    def test_composite_empty(self):
        """Test an empty combination."""
        with pytest.raises(ValidationError):
            composite([], "empty")
