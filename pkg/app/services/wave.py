"""Critical wave psi(x; alpha, beta, rho) and its zero contributions."""

import cmath
import math
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from app.exceptions import ConvergenceError, ValidationError
from app.logging_config import get_logger
from app.models import MoebiusTable, TraceKind, WaveParams, WaveTrace, ZeroSet
from app.services.numtheory import log_gamma_complex
from app.services.parallel import BlockExecutor

logger = get_logger(__name__)

# e^{-y} underflows to zero in double precision beyond y = 745
UNDERFLOW_EXPONENT = 745.0

_SYMMETRY_TOLERANCE = 1e-10


def fraction_label(value: float) -> str:
    """1/2, 3/10, 1 ... for the rho values used in captions."""
    frac = Fraction(value).limit_denominator(1000)
    if float(frac) != value:
        return repr(value)
    if frac.denominator == 1:
        return str(frac.numerator)
    return f"{frac.numerator}/{frac.denominator}"


class CriticalWaveService:
    """
    Build psi traces and their trivial/nontrivial zero decompositions.

    The Moebius inner sum depends on (alpha, beta, N, grid) only and is
    cached, so traces for different rho reuse one array bit for bit.
    """

    def __init__(
        self,
        table: MoebiusTable,
        zeros: Optional[ZeroSet] = None,
        executor: Optional[BlockExecutor] = None,
    ):
        """
        Initialize service.

        Args:
            table: Moebius table covering the largest truncation used
            zeros: Zero set for g_trivial and r_nontrivial
            executor: Block executor for the per-point sums
        """
        self.table = table
        self.zeros = zeros
        self.executor = executor or BlockExecutor()
        self._inner_cache: Dict[Tuple, np.ndarray] = {}

    def _require_zeros(self) -> ZeroSet:
        if self.zeros is None:
            raise ValidationError(
                "zero set required for zero contributions", field="zeros"
            )
        return self.zeros

    # ------------------------------------------------------------------
    # Moebius sum
    # ------------------------------------------------------------------

    def inner_sum(self, params: WaveParams) -> Tuple[np.ndarray, np.ndarray]:
        """
        sum_{n<=N} mu(n) n^-alpha e^{-e^x/n^beta} on the parameter grid.

        Terms with e^x/n^beta > 745 are exactly zero in double precision
        and are skipped.

        Returns:
            (x, inner) arrays
        """
        x = params.grid()
        key = (
            params.alpha,
            params.beta,
            params.truncation,
            params.x_min,
            params.step,
            x.size,
        )
        cached = self._inner_cache.get(key)
        if cached is not None:
            return x, cached

        n, mu = self.table.squarefree_support(params.truncation)
        n = n.astype(np.float64)
        scaled = mu * n**-params.alpha
        n_beta = n**params.beta

        def kernel(block: np.ndarray) -> np.ndarray:
            out = np.empty(block.size, dtype=np.float64)
            for i, point in enumerate(block):
                k = math.exp(point)
                start = int(
                    np.searchsorted(n_beta, k / UNDERFLOW_EXPONENT, "left")
                )
                out[i] = math.fsum(
                    scaled[start:] * np.exp(-(k / n_beta[start:]))
                )
            return out

        inner = self.executor.map_blocks(kernel, x)
        inner.setflags(write=False)
        self._inner_cache[key] = inner
        logger.info(
            f"Inner sum computed: alpha={params.alpha}, beta={params.beta}, "
            f"N={params.truncation}, points={x.size}"
        )
        return x, inner

    def psi(self, params: WaveParams) -> WaveTrace:
        """
        psi(x) = e^{((alpha - rho)/beta) x} times the inner sum.

        Args:
            params: Wave parameters

        Returns:
            WaveTrace of kind psi
        """
        x, inner = self.inner_sum(params)
        if not params.representation_valid:
            logger.warning(
                f"rho={params.rho} < 1/2: psi trace is outside "
                f"representation validity"
            )
        values = np.exp(params.exponent * x) * inner
        return WaveTrace(
            params=params,
            kind=TraceKind.PSI,
            x=x,
            values=values,
            label=f"psi_{fraction_label(params.rho)}",
            inner=inner,
            metadata={"validity": params.validity_label},
        )

    def psi_log_corrected(self, params: WaveParams) -> WaveTrace:
        """
        psi(x)/x written as e^{((alpha - rho)/beta) x - log x} times the
        inner sum.

        Raises:
            ValidationError: If the grid has a point x <= 0
        """
        x, inner = self.inner_sum(params)
        if np.any(x <= 0):
            raise ValidationError(
                f"psi_log_corrected needs x > 0; grid starts at {x[0]}",
                field="x_min",
            )
        values = np.exp(params.exponent * x - np.log(x)) * inner
        return WaveTrace(
            params=params,
            kind=TraceKind.PSI_LOG_CORRECTED,
            x=x,
            values=values,
            label=f"psi_{fraction_label(params.rho)}+(x)",
            inner=inner,
            metadata={"validity": params.validity_label},
        )

    # ------------------------------------------------------------------
    # Zero contributions
    # ------------------------------------------------------------------

    def g_trivial(self, params: WaveParams, n_terms: int = 20) -> WaveTrace:
        """
        Contribution of the trivial zeros -2n, n = 1..n_terms:

            (1/beta) sum_n e^{-((2n + rho)/beta) x} Gamma((alpha + 2n)/beta)
                     / zeta'(-2n)
        """
        zeros = self._require_zeros()
        if n_terms < 1 or n_terms > len(zeros.trivial_prime):
            raise ValidationError(
                f"n_terms must be in 1..{len(zeros.trivial_prime)}, "
                f"got {n_terms}",
                field="n_terms",
            )
        x = params.grid()
        coeffs = []
        rates = []
        for n in range(1, n_terms + 1):
            derivative = zeros.trivial(n)
            log_gamma = log_gamma_complex(
                (params.alpha + 2 * n) / params.beta
            ).real
            magnitude = math.exp(
                log_gamma - math.log(abs(derivative)) - math.log(params.beta)
            )
            coeffs.append(math.copysign(magnitude, derivative))
            rates.append((2 * n + params.rho) / params.beta)
        coeffs_arr = np.array(coeffs)
        rates_arr = np.array(rates)

        values = np.array(
            [
                math.fsum(coeffs_arr * np.exp(-rates_arr * point))
                for point in x
            ]
        )
        return WaveTrace(
            params=params,
            kind=TraceKind.G_TRIVIAL,
            x=x,
            values=values,
            label=f"g_{fraction_label(params.rho)}(x)",
            metadata={"n_terms": n_terms},
        )

    def r_nontrivial(
        self,
        params: WaveParams,
        zero_index: int,
        real_part: float = 0.5,
        real_part_factor: bool = False,
    ) -> WaveTrace:
        """
        Contribution of the zero pair real_part +/- i t_j:

            (2/beta) Re[e^{i t x/beta} Gamma((alpha - real_part - i t)/beta)
                        / zeta'(z_j)]

        zeta'(z_j) is always the value at the true zero, also when
        real_part differs from 1/2.

        Args:
            params: Wave parameters
            zero_index: 1-based zero index
            real_part: Assumed real part of the zero
            real_part_factor: Multiply by e^{((real_part - rho)/beta) x},
                the factor the residue calculus attaches to this zero

        Raises:
            ValidationError: For an unknown zero index
            ConvergenceError: If the conjugate pair is not symmetric
        """
        zero = self._require_zeros().zero(zero_index)
        beta = params.beta
        t = zero.imag
        derivative = zero.zeta_prime
        x = params.grid()

        gamma_z = cmath.exp(
            log_gamma_complex(complex(params.alpha - real_part, -t) / beta)
        )
        gamma_conj = cmath.exp(
            log_gamma_complex(complex(params.alpha - real_part, t) / beta)
        )
        phase = np.exp(1j * (t / beta) * x)
        term = phase * (gamma_z / derivative)
        term_conj = np.conj(phase) * (gamma_conj / derivative.conjugate())

        scale = float(np.max(np.abs(term))) if x.size else 0.0
        asymmetry = (
            float(np.max(np.abs(term_conj - np.conj(term)))) if x.size else 0.0
        )
        if scale > 0 and asymmetry > _SYMMETRY_TOLERANCE * scale:
            raise ConvergenceError(
                f"zero pair {zero_index} not conjugate symmetric "
                f"({asymmetry:.3g})",
                reason="conjugate_symmetry",
            )

        values = (2.0 / beta) * term.real
        if real_part_factor:
            values = values * np.exp(((real_part - params.rho) / beta) * x)

        return WaveTrace(
            params=params,
            kind=TraceKind.R_NONTRIVIAL,
            x=x,
            values=values,
            label=f"r{zero_index}(x)",
            zero_index=zero_index,
            metadata={
                "real_part": real_part,
                "real_part_factor": real_part_factor,
                "asymmetry": asymmetry,
            },
        )

    def nontrivial_sum(
        self,
        params: WaveParams,
        zero_count: int,
        real_part: float = 0.5,
        real_part_factor: bool = False,
    ) -> Optional[WaveTrace]:
        """r_1 + ... + r_{zero_count}; None when zero_count is 0."""
        if zero_count == 0:
            return None
        traces = [
            self.r_nontrivial(params, j, real_part, real_part_factor)
            for j in range(1, zero_count + 1)
        ]
        label = "+".join(trace.label for trace in traces)
        return composite([(1.0, trace) for trace in traces], label)


def composite(
    terms: Sequence[Tuple[float, WaveTrace]], label: str
) -> WaveTrace:
    """
    Linear combination sum_i c_i trace_i of traces on one grid.

    Raises:
        ValidationError: If the traces do not share a grid
    """
    if not terms:
        raise ValidationError("composite needs at least one trace", "terms")
    first = terms[0][1]
    values = np.zeros_like(first.values)
    for coeff, trace in terms:
        if not np.array_equal(trace.x, first.x):
            raise ValidationError(
                f"trace '{trace.label}' is on a different grid than "
                f"'{first.label}'",
                field="x",
            )
        values = values + coeff * trace.values
    return WaveTrace(
        params=first.params,
        kind=TraceKind.COMPOSITE,
        x=first.x.copy(),
        values=values,
        label=label,
        metadata={
            "components": [(coeff, trace.label) for coeff, trace in terms]
        },
    )


__all__ = [
    "UNDERFLOW_EXPONENT",
    "fraction_label",
    "CriticalWaveService",
    "composite",
]
