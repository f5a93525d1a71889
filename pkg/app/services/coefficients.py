"""Baez-Duarte coefficients and the fluctuation analysis around them."""

import math
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np
from scipy import special

from app.exceptions import ConvergenceError, ValidationError
from app.logging_config import get_logger
from app.models import (
    CoefficientForm,
    CoefficientQuery,
    DecayFit,
    DerivativeCheck,
    FluctuationBound,
    MoebiusTable,
    PoissonCheck,
)
from app.services.pochhammer import log_gamma_ratio
from app.validators import Validator

logger = get_logger(__name__)

FLUCTUATION_MODES = ("signed", "unconditional", "integral")


def exact_weights(k: int, n: np.ndarray, beta: float) -> np.ndarray:
    """(1 - n^-beta)^k as exp(k log1p(-n^-beta)); the n = 1 entry is 0^k."""
    with np.errstate(divide="ignore", invalid="ignore"):
        weights = np.exp(k * np.log1p(-(n**-beta)))
    weights[n == 1] = 1.0 if k == 0 else 0.0
    return weights


def exponential_weights(k: float, n: np.ndarray, beta: float) -> np.ndarray:
    """e^{-k/n^beta}, with k/n^beta formed before exponentiating."""
    return np.exp(-(k / n**beta))


def ck_fluctuation_bound(
    k: float, alpha: float, beta: float
) -> FluctuationBound:
    """
    Closed forms of the two weight integrals and their difference.

    I_exact = int_1^inf x^-alpha (1 - x^-beta)^k dx
            = Gamma(a) Gamma(k+1) / (beta Gamma(a+k+1)),
    I_exp   = int_0^inf x^-alpha e^{-k/x^beta} dx = Gamma(a) / (beta k^a),
    with a = (alpha - 1)/beta. The difference decays like
    k^{-(alpha+beta-1)/beta}.

    Args:
        k: Positive real index
        alpha: Weight exponent (> 1)
        beta: Scale (> 0)

    Returns:
        FluctuationBound
    """
    k = Validator.validate_real(k, "k", greater_than=0.0)
    alpha = Validator.validate_alpha(alpha)
    beta = Validator.validate_beta(beta)
    a = (alpha - 1) / beta
    prefactor = special.gamma(a) / beta
    log_ratio = log_gamma_ratio(k + 1, a).real
    i_exact = prefactor * math.exp(-log_ratio)
    i_exp = prefactor * math.exp(-a * math.log(k))
    # I_exp - I_exact without cancellation
    difference = i_exp * -math.expm1(a * math.log(k) - log_ratio)
    return FluctuationBound(
        k=k,
        alpha=alpha,
        beta=beta,
        i_exact=i_exact,
        i_exp=i_exp,
        difference=difference,
        exponent=(alpha + beta - 1) / beta,
    )


def fit_power_law(
    k_values: Sequence[float], deltas: Sequence[float]
) -> Tuple[float, float]:
    """
    Least-squares fit of log delta = log C + slope log k.

    Returns:
        (slope, C)

    Raises:
        ConvergenceError: With fewer than two positive deltas
    """
    k_arr = np.asarray(k_values, dtype=np.float64)
    d_arr = np.asarray(deltas, dtype=np.float64)
    keep = d_arr > 0
    if keep.sum() < 2:
        raise ConvergenceError(
            "need at least two positive values for a power-law fit",
            reason="degenerate_fit",
        )
    slope, intercept = np.polyfit(np.log(k_arr[keep]), np.log(d_arr[keep]), 1)
    return float(slope), float(math.exp(intercept))


class CoefficientService:
    """
    Evaluate c_k(alpha, beta) over a shared Moebius table.

    Sums run in ascending n and are correctly rounded (math.fsum), so the
    result does not depend on partitioning.
    """

    def __init__(self, table: MoebiusTable):
        """
        Initialize service.

        Args:
            table: Sieved Moebius values covering every truncation used
        """
        self.table = table

    def _support(self, truncation: int):
        n, mu = self.table.squarefree_support(truncation)
        return n.astype(np.float64), mu

    def terms(self, query: CoefficientQuery) -> np.ndarray:
        """Per-n terms mu(n) n^-alpha w_k(n) for squarefree n <= N."""
        n, mu = self._support(query.truncation)
        if query.form is CoefficientForm.EXACT:
            weights = exact_weights(int(query.k), n, query.beta)
        else:
            weights = exponential_weights(query.k, n, query.beta)
        return mu * n**-query.alpha * weights

    def ck(self, query: CoefficientQuery) -> float:
        """
        Truncated coefficient sum.

        Args:
            query: CoefficientQuery

        Returns:
            c_k (exact form) or its exponential surrogate
        """
        return math.fsum(self.terms(query))

    def coefficient(
        self,
        k: float,
        alpha: float = 7.5,
        beta: float = 4.0,
        truncation: Optional[int] = None,
        form: CoefficientForm = CoefficientForm.EXACT,
    ) -> float:
        query = CoefficientQuery(
            k=k,
            alpha=alpha,
            beta=beta,
            truncation=truncation or self.table.limit,
            form=form,
        )
        return self.ck(query)

    def exact_block(
        self, ks: np.ndarray, alpha: float, beta: float, truncation: int
    ) -> np.ndarray:
        """Exact-form c_k for each integer k in ``ks``."""
        n, mu = self._support(truncation)
        scaled = mu * n**-alpha
        with np.errstate(divide="ignore", invalid="ignore"):
            log_base = np.log1p(-(n**-beta))
        out = np.empty(len(ks), dtype=np.float64)
        for i, k in enumerate(ks):
            weights = np.exp(k * log_base)
            weights[n == 1] = 1.0 if k == 0 else 0.0
            out[i] = math.fsum(scaled * weights)
        return out

    def ck_discrete_derivative_check(
        self, k: int, alpha: float, beta: float, truncation: int
    ) -> DerivativeCheck:
        """
        c_k - c_{k+1} against c_k(alpha + beta, beta), exact form.

        The identity holds term by term, so lhs is summed from the
        per-n differences.
        """
        k = Validator.validate_positive_int(k, "k", minimum=0)
        base = CoefficientQuery(
            k=k, alpha=alpha, beta=beta, truncation=truncation
        )
        lhs = math.fsum(
            np.concatenate(
                [self.terms(base), -self.terms(base.with_k(k + 1))]
            )
        )
        rhs = self.ck(base.shifted())
        return DerivativeCheck(lhs=lhs, rhs=rhs)

    def continuous_derivative_check(
        self,
        k: float,
        alpha: float,
        beta: float,
        truncation: int,
        step: Optional[float] = None,
    ) -> DerivativeCheck:
        """
        -d/dk of the exponential form against the same form at alpha + beta.

        The derivative is a central difference with step 1e-4 * max(k, 1).
        """
        k = Validator.validate_real(k, "k", greater_than=-math.inf)
        h = step or 1e-4 * max(abs(k), 1.0)
        n, mu = self._support(truncation)
        scaled = mu * n**-alpha
        upper = math.fsum(scaled * exponential_weights(k + h, n, beta))
        lower = math.fsum(scaled * exponential_weights(k - h, n, beta))
        lhs = -(upper - lower) / (2 * h)
        rhs = math.fsum(
            mu * n ** -(alpha + beta) * exponential_weights(k, n, beta)
        )
        logger.debug(f"Continuous derivative check at k={k}: {lhs} vs {rhs}")
        return DerivativeCheck(lhs=lhs, rhs=rhs)

    def poisson_resum_check(
        self,
        k: int,
        p_max: int,
        alpha: float,
        beta: float,
        truncation: int,
    ) -> PoissonCheck:
        """
        Resum exact c_p with Poisson weights k^p e^-k / p! and compare with
        the exponential form at k.

        Args:
            k: Center of the Poisson weights (>= 0)
            p_max: Last p included
            alpha: Weight exponent
            beta: Scale
            truncation: Moebius truncation N

        Returns:
            PoissonCheck with both values and the weight total
        """
        k = Validator.validate_positive_int(k, "k", minimum=0)
        p_max = Validator.validate_positive_int(p_max, "p_max", minimum=0)
        p = np.arange(p_max + 1, dtype=np.float64)
        if k == 0:
            weights = np.zeros(p_max + 1)
            weights[0] = 1.0
        else:
            weights = np.exp(
                p * math.log(k) - k - special.gammaln(p + 1)
            )
        peak_passed = p_max >= k + 10 * math.sqrt(k)
        if not peak_passed:
            logger.warning(
                f"p_max={p_max} below Poisson peak region for k={k} "
                f"(need >= {k + 10 * math.sqrt(k):.1f})"
            )

        c_p = self.exact_block(p, alpha, beta, truncation)
        resummed = math.fsum(c_p * weights)
        direct = self.coefficient(
            k, alpha, beta, truncation, CoefficientForm.EXPONENTIAL
        )
        return PoissonCheck(
            resummed=resummed,
            direct=direct,
            weight_total=math.fsum(weights),
            peak_passed=peak_passed,
        )

    def fluctuations(
        self,
        k_values: Iterable[int],
        alpha: float,
        beta: float,
        truncation: int,
        mode: str = "signed",
    ) -> np.ndarray:
        """
        Exact-vs-exponential fluctuation for each k.

        Modes:
            signed: |c^_k - c_k| with the Moebius signs
            unconditional: sum over all n <= N of n^-alpha times the weight
                difference (the |mu(n)| <= 1 bound)
            integral: I_exp - I_exact from the closed forms
        """
        if mode not in FLUCTUATION_MODES:
            raise ValidationError(
                f"Unknown fluctuation mode '{mode}'. "
                f"Must be one of: {', '.join(FLUCTUATION_MODES)}",
                field="mode",
            )
        ks = Validator.validate_k_grid(k_values)
        alpha = Validator.validate_alpha(alpha)
        beta = Validator.validate_beta(beta)

        if mode == "integral":
            return np.array(
                [ck_fluctuation_bound(k, alpha, beta).difference for k in ks]
            )

        if mode == "signed":
            n, mu = self._support(truncation)
        else:
            n = np.arange(1, truncation + 1, dtype=np.float64)
            mu = np.ones_like(n)
        scaled = mu * n**-alpha
        out = []
        for k in ks:
            diff = exponential_weights(k, n, beta) - exact_weights(k, n, beta)
            out.append(abs(math.fsum(scaled * diff)))
        return np.array(out)

    def fluctuation_decay_fit(
        self,
        k_values: Iterable[int],
        alpha: float,
        beta: float,
        truncation: int,
        mode: str = "signed",
    ) -> DecayFit:
        """
        Log-log regression of the fluctuation against k.

        Returns:
            DecayFit with slope, fitted constant C and the expected
            exponent (alpha + beta - 1)/beta
        """
        ks = np.array(Validator.validate_k_grid(k_values), dtype=np.float64)
        deltas = self.fluctuations(
            ks.astype(int), alpha, beta, truncation, mode
        )
        slope, constant = fit_power_law(ks, deltas)
        expected = (alpha + beta - 1) / beta
        logger.info(
            f"Fluctuation fit ({mode}): slope={slope:.4f}, C={constant:.4g}, "
            f"expected=-{expected:.4f}"
        )
        return DecayFit(
            mode=mode,
            k_values=ks,
            deltas=deltas,
            slope=slope,
            constant=constant,
            expected_exponent=expected,
        )


__all__ = [
    "FLUCTUATION_MODES",
    "exact_weights",
    "exponential_weights",
    "ck_fluctuation_bound",
    "fit_power_law",
    "CoefficientService",
]
