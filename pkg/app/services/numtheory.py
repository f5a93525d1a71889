"""Number-theoretic and special-function primitives."""

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Optional, Tuple

import numpy as np
from scipy import special

from app.config import settings
from app.exceptions import ConvergenceError, DomainError, ValidationError
from app.logging_config import get_logger
from app.models import MoebiusTable, NontrivialZero, ZeroSet
from app.validators import Validator

logger = get_logger(__name__)

# Ordinates of the first ten nontrivial zeros 1/2 + i t
ZERO_ORDINATES = (
    14.134725141734693,
    21.022039638771555,
    25.010857580145688,
    30.424876125859513,
    32.935061587739189,
    37.586178158825671,
    40.918719012147495,
    43.327073280914999,
    48.005150881167159,
    49.773832477672302,
)

MAX_TRIVIAL_INDEX = 20

# Euler-Maclaurin: below this index the zeta sum is taken term by term
_EM_START = 10
_EM_TERMS = 12
_BERNOULLI = special.bernoulli(2 * _EM_TERMS)
_EM_COEFFS = tuple(
    float(_BERNOULLI[2 * j]) / math.factorial(2 * j)
    for j in range(1, _EM_TERMS + 1)
)

_DIFF_STEPS = (1e-3, 1e-4, 1e-5)
_DIFF_AGREEMENT = 1e-6


# ---------------------------------------------------------------------------
# Moebius sieve
# ---------------------------------------------------------------------------


def _small_primes(limit: int) -> np.ndarray:
    """Primes p <= limit (sieve of Eratosthenes)."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    return np.flatnonzero(is_prime).astype(np.int64)


def _sieve_segment(lo: int, hi: int, primes: np.ndarray) -> np.ndarray:
    """mu(n) for lo <= n < hi, given all primes p <= sqrt(hi - 1)."""
    size = hi - lo
    mu = np.ones(size, dtype=np.int8)
    # product of the distinct small primes found in n
    found = np.ones(size, dtype=np.int64)
    for p in primes.tolist():
        if p * p >= hi:
            break
        first = (-lo) % p
        mu[first::p] *= -1
        found[first::p] *= p
        square = p * p
        mu[(-lo) % square :: square] = 0
    n = np.arange(lo, hi, dtype=np.int64)
    # one prime factor above sqrt(n) is left over
    mu[found != n] *= -1
    return mu


def iter_moebius_segments(
    limit: int, segment_size: Optional[int] = None
) -> Iterator[Tuple[int, np.ndarray]]:
    """
    Stream mu(n) for 1 <= n <= limit in consecutive segments.

    Args:
        limit: Largest n
        segment_size: Entries per segment (defaults to SIEVE_SEGMENT_SIZE)

    Yields:
        (first_n, int8 array of mu over the segment)
    """
    limit = Validator.validate_positive_int(limit, "limit")
    segment_size = Validator.validate_positive_int(
        segment_size or settings.sieve_segment_size, "segment_size"
    )
    primes = _small_primes(math.isqrt(limit))
    lo = 1
    while lo <= limit:
        hi = min(lo + segment_size, limit + 1)
        yield lo, _sieve_segment(lo, hi, primes)
        lo = hi


def moebius_sieve(
    limit: int, segment_size: Optional[int] = None
) -> MoebiusTable:
    """
    Sieve mu(n) for n <= limit.

    Args:
        limit: Largest n, 1 <= limit <= MOEBIUS_MAX_LIMIT
        segment_size: Entries per sieve segment

    Returns:
        MoebiusTable with values[n] == mu(n)

    Raises:
        ValidationError: If limit is not a positive integer in range
    """
    limit = Validator.validate_positive_int(limit, "limit")
    if limit > settings.moebius_max_limit:
        raise ValidationError(
            f"limit {limit} exceeds MOEBIUS_MAX_LIMIT "
            f"({settings.moebius_max_limit})",
            field="limit",
        )
    values = np.zeros(limit + 1, dtype=np.int8)
    for lo, segment in iter_moebius_segments(limit, segment_size):
        values[lo : lo + segment.size] = segment
    logger.debug(f"Moebius sieve complete: limit={limit}")
    return MoebiusTable(limit=limit, values=values)


# ---------------------------------------------------------------------------
# Real zeta
# ---------------------------------------------------------------------------


def zeta_tail(s: float, start: float) -> float:
    """
    Sum of n^{-s} over n = start, start + 1, ... by Euler-Maclaurin.

    Args:
        s: Real exponent > 1
        start: First index (>= 1)

    Returns:
        The tail sum
    """
    s = Validator.validate_real(s, "s", greater_than=1.0)
    a = Validator.validate_real(start, "start", greater_than=0.0)
    terms = [
        a ** (1.0 - s) / (s - 1.0),
        0.5 * a ** (-s),
    ]
    rising = s  # (s)_{2j-1}
    power = a ** (-s - 1.0)
    for j, coeff in enumerate(_EM_COEFFS, start=1):
        terms.append(coeff * rising * power)
        rising *= (s + 2 * j - 1) * (s + 2 * j)
        power /= a * a
    return math.fsum(terms)


def zeta_real(s: float) -> float:
    """
    Riemann zeta for real s > 1.

    Raises:
        DomainError: If s <= 1
    """
    if isinstance(s, complex) or not s > 1:
        raise DomainError(f"zeta_real requires real s > 1, got {s}", point=s)
    head = [n ** (-float(s)) for n in range(1, _EM_START)]
    return math.fsum(head + [zeta_tail(s, _EM_START)])


def zeta_partial(s: float, n: int) -> float:
    """Partial sum of k^{-s} for k = 1..n (s > 1)."""
    n = Validator.validate_positive_int(n, "n")
    if not s > 1:
        raise DomainError(f"zeta_partial requires s > 1, got {s}", point=s)
    if n <= 10_000:
        k = np.arange(1, n + 1, dtype=np.float64)
        return math.fsum(k ** (-float(s)))
    return zeta_real(s) - zeta_tail(s, n + 1)


# ---------------------------------------------------------------------------
# Complex zeta
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _borwein_weights(n: int) -> np.ndarray:
    """
    Signed weights (-1)^k (d_k - d_n)/d_n of the accelerated eta series.

    d_k = n * sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!), computed exactly.
    """
    partial = Fraction(0)
    d = []
    for i in range(n + 1):
        partial += Fraction(
            math.factorial(n + i - 1) * 4**i,
            math.factorial(n - i) * math.factorial(2 * i),
        )
        d.append(n * partial)
    d_n = d[n]
    weights = np.array(
        [(-1) ** k * float((d[k] - d_n) / d_n) for k in range(n)]
    )
    weights.setflags(write=False)
    return weights


def _borwein_terms(t: float) -> int:
    """Number of eta terms for about 17 digits at height |t|."""
    t = abs(t)
    digits = (
        math.pi * t / 2 * math.log10(math.e) + math.log10(1 + 2 * t) + 17
    )
    n = math.ceil(digits / math.log10(3 + math.sqrt(8)))
    return min(max(n, 30), 120)


def zeta_complex(s: complex, terms: Optional[int] = None) -> complex:
    """
    Riemann zeta for Re(s) > 0, s != 1, from the alternating eta series.

    Args:
        s: Complex argument
        terms: Series length (chosen from |Im s| when omitted)

    Returns:
        zeta(s)

    Raises:
        DomainError: At the pole s = 1 or for Re(s) <= 0
    """
    s = complex(s)
    if s.real <= 0:
        raise DomainError(
            f"zeta_complex requires Re(s) > 0, got {s}", point=s
        )
    if s == 1:
        raise DomainError("zeta has a pole at s = 1", point=s)
    n = terms or _borwein_terms(s.imag)
    weights = _borwein_weights(n)
    powers = np.exp(-s * np.log(np.arange(1, n + 1, dtype=np.float64)))
    series = weights * powers
    eta = -complex(math.fsum(series.real), math.fsum(series.imag))
    denominator = 1 - cmath.exp((1 - s) * math.log(2))
    if abs(denominator) < 1e-15:
        raise DomainError(f"eta/zeta conversion singular at s = {s}", point=s)
    return eta / denominator


def zeta_prime_at_zero(t: float) -> complex:
    """
    zeta'(1/2 + i t) by central differences with Richardson extrapolation.

    Args:
        t: Ordinate (any positive real; a zero is not required)

    Returns:
        The derivative

    Raises:
        ConvergenceError: If the two extrapolants disagree
    """
    t = Validator.validate_real(t, "t", greater_than=0.0)
    point = complex(0.5, t)
    n = _borwein_terms(t)

    def central(h: float) -> complex:
        return (zeta_complex(point + h, n) - zeta_complex(point - h, n)) / (
            2 * h
        )

    d1, d2, d3 = (central(h) for h in _DIFF_STEPS)
    r1 = (100 * d2 - d1) / 99
    r2 = (100 * d3 - d2) / 99
    if abs(r1 - r2) > _DIFF_AGREEMENT * abs(r2):
        raise ConvergenceError(
            f"zeta'(1/2 + {t}i) unstable: {r1} vs {r2}",
            reason="finite_difference",
        )
    return r1


def zeta_prime_trivial(n: int) -> float:
    """
    zeta'(-2n) = (-1)^n (2n)! zeta(2n+1) / (2^{2n+1} pi^{2n}).

    Evaluated through logarithms so n = 20 does not overflow.

    Raises:
        ValidationError: If n is outside 1..20
    """
    n = Validator.validate_positive_int(n, "n")
    if n > MAX_TRIVIAL_INDEX:
        raise ValidationError(
            f"n must be <= {MAX_TRIVIAL_INDEX}, got {n}", field="n"
        )
    log_magnitude = (
        special.gammaln(2 * n + 1)
        + math.log(zeta_real(2 * n + 1))
        - (2 * n + 1) * math.log(2)
        - 2 * n * math.log(math.pi)
    )
    return (-1) ** n * math.exp(log_magnitude)


def log_gamma_complex(z: complex) -> complex:
    """
    Principal-branch log Gamma.

    Raises:
        DomainError: If z is a nonpositive integer
    """
    z = complex(z)
    if z.imag == 0 and z.real <= 0 and z.real == math.floor(z.real):
        raise DomainError(f"Gamma has a pole at z = {z.real:g}", point=z)
    return complex(special.loggamma(z))


@lru_cache(maxsize=16)
def default_zero_set(
    count: int = 2, trivial_terms: int = MAX_TRIVIAL_INDEX
) -> ZeroSet:
    """
    The first ``count`` nontrivial zeros with computed zeta'(z), plus the
    trivial-zero derivative table.
    """
    count = Validator.validate_positive_int(count, "count", minimum=0)
    if count > len(ZERO_ORDINATES):
        raise ValidationError(
            f"at most {len(ZERO_ORDINATES)} built-in zeros, got {count}",
            field="zero_count",
        )
    nontrivial = []
    for t in ZERO_ORDINATES[:count]:
        derivative = zeta_prime_at_zero(t)
        nontrivial.append(
            NontrivialZero(
                imag=t,
                zeta_prime_real=derivative.real,
                zeta_prime_imag=derivative.imag,
            )
        )
    trivial = [zeta_prime_trivial(n) for n in range(1, trivial_terms + 1)]
    logger.info(
        f"Zero set ready: {count} nontrivial, {trivial_terms} trivial"
    )
    return ZeroSet(nontrivial=nontrivial, trivial_prime=trivial)


__all__ = [
    "ZERO_ORDINATES",
    "MAX_TRIVIAL_INDEX",
    "iter_moebius_segments",
    "moebius_sieve",
    "zeta_tail",
    "zeta_real",
    "zeta_partial",
    "zeta_complex",
    "zeta_prime_at_zero",
    "zeta_prime_trivial",
    "log_gamma_complex",
    "default_zero_set",
]
