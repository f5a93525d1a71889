"""Zeta zeros used by the residue expansion of the critical wave."""

from typing import List

from pydantic import BaseModel, ConfigDict, Field, field_validator

from app.exceptions import ValidationError


class NontrivialZero(BaseModel):
    """A zero 1/2 + i*imag of zeta together with zeta'(1/2 + i*imag)."""

    model_config = ConfigDict(frozen=True)

    imag: float = Field(gt=0)
    zeta_prime_real: float
    zeta_prime_imag: float

    @property
    def zeta_prime(self) -> complex:
        return complex(self.zeta_prime_real, self.zeta_prime_imag)

    def point(self, real_part: float = 0.5) -> complex:
        """The zero as a complex number, with an assumed real part."""
        return complex(real_part, self.imag)

    @field_validator("zeta_prime_imag")
    @classmethod
    def _nonzero_derivative(cls, value: float, info) -> float:
        if value == 0.0 and info.data.get("zeta_prime_real") == 0.0:
            raise ValueError("zeta'(z) must be nonzero (simple zero)")
        return value


class ZeroSet(BaseModel):
    """
    Nontrivial zeros in use plus the trivial-zero derivative table.

    trivial_prime[n - 1] holds zeta'(-2n).
    """

    model_config = ConfigDict(frozen=True)

    nontrivial: List[NontrivialZero] = Field(default_factory=list)
    trivial_prime: List[float] = Field(default_factory=list, max_length=20)

    @field_validator("nontrivial")
    @classmethod
    def _strictly_increasing(
        cls, zeros: List[NontrivialZero]
    ) -> List[NontrivialZero]:
        for previous, current in zip(zeros, zeros[1:]):
            if current.imag <= previous.imag:
                raise ValueError(
                    "nontrivial zero ordinates must be strictly increasing"
                )
        return zeros

    @field_validator("trivial_prime")
    @classmethod
    def _nonzero_trivial(cls, values: List[float]) -> List[float]:
        if any(v == 0.0 for v in values):
            raise ValueError("zeta'(-2n) must be nonzero")
        return values

    def __len__(self) -> int:
        return len(self.nontrivial)

    def zero(self, index: int) -> NontrivialZero:
        """
        Return the index-th nontrivial zero (1-based).

        Raises:
            ValidationError: If index is not in 1..len(nontrivial)
        """
        if index < 1 or index > len(self.nontrivial):
            raise ValidationError(
                f"Unknown zero index {index}; "
                f"zero set holds {len(self.nontrivial)} zeros",
                field="zero_index",
            )
        return self.nontrivial[index - 1]

    def trivial(self, n: int) -> float:
        """Return zeta'(-2n)."""
        if n < 1 or n > len(self.trivial_prime):
            raise ValidationError(
                f"Trivial zero index {n} outside 1..{len(self.trivial_prime)}",
                field="n",
            )
        return self.trivial_prime[n - 1]


__all__ = ["NontrivialZero", "ZeroSet"]
