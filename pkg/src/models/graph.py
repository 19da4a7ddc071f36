"""Pydantic models for influence matrices and node sets."""

from typing import FrozenSet

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.config import settings
from src.models.arrays import FloatArray


class RowStochasticMatrix(BaseModel):
    """Social-influence matrix P; the graph is the support of P."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    entries: FloatArray = Field(..., description="n x n nonnegative entries")

    @model_validator(mode="after")
    def validate_stochastic(self) -> "RowStochasticMatrix":
        """Ensure the matrix is square, nonnegative and row stochastic."""
        if self.entries.ndim != 2 or self.entries.shape[0] != self.entries.shape[1]:
            raise ValueError(f"matrix must be square, got shape {self.entries.shape}")
        if self.entries.shape[0] == 0:
            raise ValueError("matrix must have at least one row")
        if np.any(self.entries < 0):
            raise ValueError("matrix entries must be nonnegative")
        deviation = np.max(np.abs(self.entries.sum(axis=1) - 1.0))
        if deviation > settings.row_sum_tol:
            raise ValueError(f"rows must sum to 1 (max deviation {deviation:.3e})")
        return self

    @property
    def n(self) -> int:
        """Number of users."""
        return int(self.entries.shape[0])

    def support(self) -> np.ndarray:
        """Boolean adjacency of the influence graph (v -> w iff P_vw > 0)."""
        return self.entries > 0


class NodeSet(BaseModel):
    """A subset of the user indices {0, ..., n-1}."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=1, description="Size of the node universe")
    members: FrozenSet[int] = Field(default_factory=frozenset)

    @model_validator(mode="after")
    def validate_members(self) -> "NodeSet":
        """Ensure every member is a valid node index."""
        outside = sorted(v for v in self.members if v < 0 or v >= self.n)
        if outside:
            raise ValueError(f"nodes {outside} are outside 0..{self.n - 1}")
        return self

    @classmethod
    def from_mask(cls, mask: np.ndarray) -> "NodeSet":
        """Build a node set from a boolean mask over the users."""
        return cls(n=len(mask), members=frozenset(int(v) for v in np.flatnonzero(mask)))

    @classmethod
    def everyone(cls, n: int) -> "NodeSet":
        return cls(n=n, members=frozenset(range(n)))

    def is_everyone(self) -> bool:
        return len(self.members) == self.n

    def __contains__(self, node: object) -> bool:
        return node in self.members

    def __len__(self) -> int:
        return len(self.members)

    def sorted(self) -> list[int]:
        return sorted(self.members)
