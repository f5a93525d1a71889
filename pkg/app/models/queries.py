"""Query objects for Pochhammer, coefficient and reciprocal evaluations."""

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, model_validator


def _z_prime(s: complex, alpha: float, beta: float) -> complex:
    return (s - alpha) / beta + 1


class PochhammerQuery(BaseModel):
    """
    Argument set for P_k(s, alpha, beta).

    The classical polynomial is evaluated at z' = (s - alpha)/beta + 1.
    """

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    k: int = Field(ge=0)
    s_real: float
    s_imag: float = 0.0
    alpha: float
    beta: float = Field(gt=0)

    @classmethod
    def of(
        cls, k: int, s: complex, alpha: float, beta: float
    ) -> "PochhammerQuery":
        s = complex(s)
        return cls(k=k, s_real=s.real, s_imag=s.imag, alpha=alpha, beta=beta)

    @property
    def s(self) -> complex:
        return complex(self.s_real, self.s_imag)

    @property
    def z_prime(self) -> complex:
        return _z_prime(self.s, self.alpha, self.beta)


class CoefficientForm(str, Enum):
    """Exact binomial weights (1 - n^-beta)^k or their exponential surrogate."""

    EXACT = "exact"
    EXPONENTIAL = "exponential"


class CoefficientQuery(BaseModel):
    """Argument set for c_k(alpha, beta) truncated at N."""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    k: float = Field(ge=0)
    alpha: float = Field(default=7.5, gt=1)
    beta: float = Field(default=4.0, gt=0)
    truncation: int = Field(default=2000, ge=1)
    form: CoefficientForm = CoefficientForm.EXACT

    @model_validator(mode="after")
    def _exact_needs_integer_k(self) -> "CoefficientQuery":
        if self.form is CoefficientForm.EXACT and self.k != int(self.k):
            raise ValueError(
                f"form=exact requires an integer k, got {self.k}"
            )
        return self

    def with_k(self, k: float) -> "CoefficientQuery":
        return self.model_copy(update={"k": float(k)})

    def shifted(self) -> "CoefficientQuery":
        """Same query at alpha + beta (the discrete-derivative partner)."""
        return self.model_copy(update={"alpha": self.alpha + self.beta})


class ReciprocalQuery(BaseModel):
    """Argument set for the partial sums of sum_k c_k P_k(s)."""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    s_real: float
    s_imag: float = 0.0
    alpha: float = Field(default=7.5, gt=1)
    beta: float = Field(default=4.0, gt=0)
    k_max: int = Field(default=10_000, ge=0)
    truncation: int = Field(default=2000, ge=1)

    @classmethod
    def of(cls, s: complex, **kwargs) -> "ReciprocalQuery":
        s = complex(s)
        return cls(s_real=s.real, s_imag=s.imag, **kwargs)

    @property
    def s(self) -> complex:
        return complex(self.s_real, self.s_imag)

    @property
    def z_prime(self) -> complex:
        return _z_prime(self.s, self.alpha, self.beta)

    @property
    def validity_claimed(self) -> bool:
        return self.s_real > 0.5


__all__ = [
    "PochhammerQuery",
    "CoefficientForm",
    "CoefficientQuery",
    "ReciprocalQuery",
]
