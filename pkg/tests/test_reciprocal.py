"""Tests for the reconstruction of 1/zeta(s) and the duality map."""

import math

import pytest
from scipy import special

from app.exceptions import DomainError, TrivialZeroPole
from app.models import ReciprocalQuery
from app.services.coefficients import CoefficientService
from app.services.reciprocal import ReciprocalService, duality_transform


@pytest.fixture(scope="module")
def service(table):
    """Reciprocal service over the session table."""
    return ReciprocalService(CoefficientService(table))


class TestReciprocalExpansion:
    """Test partial sums of sum_k c_k P_k(s)."""

    @pytest.mark.slow
    @pytest.mark.parametrize(
        "s, tolerance", [(2.0, 1e-3), (3.0, 1e-4), (3.5, 1e-3)]
    )
    def test_converges_to_reciprocal_zeta(self, service, s, tolerance):
        """Test the partial sum at K = 10^4 approaches 1/zeta(s)."""
        result = service.reciprocal_zeta_partial(ReciprocalQuery.of(s))
        assert result.validity_claimed
        assert result.error_against(1 / special.zeta(s)) < tolerance

    @pytest.mark.slow
    @pytest.mark.parametrize("s", [2.0, 3.0, 3.5])
    def test_tail_corrected_value(self, service, s):
        """Test partial sum plus tail estimate is within 1e-4 of 1/zeta(s)."""
        result = service.reciprocal_zeta_partial(ReciprocalQuery.of(s))
        corrected = result.final + result.tail_estimate
        assert abs(corrected - 1 / special.zeta(s)) < 1e-4

    def test_limit_is_truncated_dirichlet_series(self, service, table):
        """Test the k -> infinity value equals sum_{n<=N} mu(n) n^-s."""
        query = ReciprocalQuery.of(2.0, k_max=0, truncation=100)
        expected = math.fsum(
            int(table.values[n]) / n**2 for n in range(1, 101)
        )
        assert service.expansion_limit(query) == pytest.approx(
            expected, rel=1e-14
        )

    @pytest.mark.parametrize("s", [2.0, complex(0.5, 3.0), complex(1.5, -7.0)])
    def test_partial_sums_reach_limit(self, service, s):
        """Test with N = 2 the expansion converges to 1 - 2^-s."""
        result = service.reciprocal_zeta_partial(
            ReciprocalQuery.of(s, k_max=2000, truncation=2)
        )
        assert result.limit == pytest.approx(1 - 2 ** -complex(s), rel=1e-14)
        assert abs(result.tail_estimate) < 1e-10

    def test_decade_table(self, service):
        """Test rows at K = 0, 9, 99."""
        result = service.reciprocal_zeta_partial(
            ReciprocalQuery.of(2.0, k_max=99)
        )
        rows = result.decade_table()
        assert [row[0] for row in rows] == [0, 9, 99]
        assert result.k_used == 99
        assert rows[-1][1] == result.final

    def test_first_term_is_c_zero(self, service):
        """Test K = 0 gives c_0."""
        result = service.reciprocal_zeta_partial(
            ReciprocalQuery.of(2.0, k_max=0)
        )
        c0 = service.coefficients.coefficient(0, 7.5, 4.0, 2000)
        assert result.final == pytest.approx(c0, rel=1e-14)

    def test_polynomial_terminates(self, service):
        """Test s = alpha makes P_k vanish for k >= 1 and stops early."""
        result = service.reciprocal_zeta_partial(
            ReciprocalQuery.of(7.5, k_max=10_000)
        )
        c0 = service.coefficients.coefficient(0, 7.5, 4.0, 2000)
        assert result.stopped_early
        assert result.k_used < 10_000
        assert result.final == pytest.approx(c0, rel=1e-14)

    def test_outside_validity_noted(self, service):
        """Test Re(s) <= 1/2 is reported, not refused."""
        result = service.reciprocal_zeta_partial(
            ReciprocalQuery.of(complex(0.4, 3.0), k_max=50)
        )
        assert not result.validity_claimed
        assert result.notes


class TestDuality:
    """Test 1/zeta(1 - s) from 1/zeta(s)."""

    def test_zeta_minus_one(self):
        """Test s = 2 gives 1/zeta(-1) = -12."""
        value = duality_transform(2.0, 6 / math.pi**2)
        assert value.real == pytest.approx(-12.0, rel=1e-10)
        assert abs(value.imag) < 1e-12

    def test_involution(self):
        """Test applying the map twice is the identity."""
        s = complex(0.3, 2.0)
        recip = complex(0.7, -0.2)
        back = duality_transform(1 - s, duality_transform(s, recip))
        assert abs(back - recip) <= 1e-10 * abs(recip)

    def test_limit_at_one(self):
        """Test s = 1 returns 1/zeta(0) = -2."""
        assert duality_transform(1.0, 0.0) == -2

    @pytest.mark.parametrize("s", [3, 5, 7])
    def test_trivial_zero_pole(self, s):
        """Test odd s >= 3 hits a trivial zero of zeta(1 - s)."""
        with pytest.raises(TrivialZeroPole) as exc_info:
            duality_transform(s, 1.0)
        assert exc_info.value.code == "TRIVIAL_ZERO"
        assert exc_info.value.zero == 1 - s

    def test_limit_at_zero(self):
        """Test s = 0 returns 1/zeta(1) = 0."""
        assert duality_transform(0.0, -2.0) == 0

    @pytest.mark.parametrize("s", [-2, -4, -6])
    def test_trivial_zero_of_zeta_s(self, s):
        """Test 1/zeta(s) is infinite at s = -2, -4, ..."""
        with pytest.raises(DomainError):
            duality_transform(s, 1.0)

    def test_zeta_minus_three(self):
        """Test s = 4 gives 1/zeta(-3) = 120."""
        value = duality_transform(4.0, 90 / math.pi**4)
        assert value.real == pytest.approx(120.0, rel=1e-10)

    @pytest.mark.parametrize("t", [5.0, 14.134725, 30.0])
    def test_critical_line_modulus(self, t):
        """Test the factor has modulus one on Re(s) = 1/2."""
        value = duality_transform(complex(0.5, t), 1.0)
        assert abs(value) == pytest.approx(1.0, rel=1e-10)
