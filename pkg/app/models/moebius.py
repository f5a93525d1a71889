"""Sieved Moebius function table."""

from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Tuple

import numpy as np

from app.exceptions import ValidationError


@dataclass(frozen=True)
class MoebiusTable:
    """
    Read-only table of mu(n) for 0 <= n <= limit.

    values[0] is a zero placeholder so that values[n] == mu(n). The array is
    flagged read-only on construction and can be shared across workers.
    """

    limit: int
    values: np.ndarray

    def __post_init__(self):
        if self.limit < 1:
            raise ValidationError(
                f"Moebius table limit must be >= 1, got {self.limit}",
                field="limit",
            )
        if self.values.shape != (self.limit + 1,):
            raise ValidationError(
                f"Moebius table expects {self.limit + 1} entries, "
                f"got {self.values.shape}",
                field="values",
            )
        self.values.setflags(write=False)

    def __len__(self) -> int:
        return self.limit

    def __repr__(self) -> str:
        return f"<MoebiusTable(limit={self.limit})>"

    def mu(self, n: int) -> int:
        """Return mu(n) for 1 <= n <= limit."""
        if n < 1 or n > self.limit:
            raise ValidationError(
                f"n={n} outside sieved range 1..{self.limit}", field="n"
            )
        return int(self.values[n])

    def mertens(self, n: Optional[int] = None) -> int:
        """Mertens function M(n) = sum of mu(m) for m <= n."""
        upper = self.limit if n is None else min(n, self.limit)
        return int(self.values[1 : upper + 1].sum(dtype=np.int64))

    @cached_property
    def _support(self) -> Tuple[np.ndarray, np.ndarray]:
        n = np.flatnonzero(self.values).astype(np.int64)
        return n, self.values[n].astype(np.float64)

    def squarefree_support(
        self, truncation: Optional[int] = None
    ) -> Tuple[np.ndarray, np.ndarray]:
        """
        Squarefree n <= truncation together with mu(n) as float64.

        Args:
            truncation: Upper limit N (defaults to the table limit)

        Returns:
            Tuple of (n, mu(n)) arrays, n ascending
        """
        n, mu = self._support
        if truncation is None or truncation >= self.limit:
            if truncation is not None and truncation > self.limit:
                raise ValidationError(
                    f"truncation {truncation} exceeds sieved limit "
                    f"{self.limit}",
                    field="truncation",
                )
            return n, mu
        stop = int(np.searchsorted(n, truncation, side="right"))
        return n[:stop], mu[:stop]

    def truncated(self, limit: int) -> "MoebiusTable":
        """Return a table restricted to n <= limit."""
        if limit > self.limit:
            raise ValidationError(
                f"cannot extend table from {self.limit} to {limit}",
                field="limit",
            )
        return MoebiusTable(limit=limit, values=self.values[: limit + 1])


__all__ = ["MoebiusTable"]
