"""Pydantic models for scenarios, trajectories and convergence reports."""

from typing import Dict, List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.constants import FIG_EDGE_PROBABILITY, FIG_INFLUENCERS, FIG_USERS, WEIGHT_NAMES
from src.models.equilibria import Regime, SchurCertificate
from src.models.graph import RowStochasticMatrix
from src.models.state import (
    AttentionState,
    AttentionTotals,
    ModelParams,
    PopularityVector,
    QualityVector,
)


class Scenario(BaseModel):
    """A fully specified run: graph, weights, quality, initial state and horizon."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    P: RowStochasticMatrix
    params: ModelParams
    q: QualityVector
    x0: AttentionState
    horizon: int = Field(..., ge=1, description="Number of steps to simulate")
    tol: float = Field(..., gt=0.0, description="Convergence tolerance")
    seed: Optional[int] = Field(
        None, ge=0, lt=2**64, description="Seed used for sampling"
    )
    record_every: int = Field(1, ge=1, description="Record every k-th step")

    @model_validator(mode="after")
    def validate_dimensions(self) -> "Scenario":
        """Ensure users and influencers agree across all parts."""
        if not self.P.n == self.params.n == self.x0.n:
            raise ValueError(
                f"user counts disagree: P has {self.P.n}, params {self.params.n}, "
                f"x0 {self.x0.n}"
            )
        if self.q.m != self.x0.m:
            raise ValueError(
                f"influencer counts disagree: quality has {self.q.m}, x0 {self.x0.m}"
            )
        return self

    @property
    def n(self) -> int:
        return self.P.n

    @property
    def m(self) -> int:
        return self.q.m


class ProtocolSpec(BaseModel):
    """Distribution from which a scenario is sampled."""

    model_config = ConfigDict(frozen=True)

    protocol: str = Field(..., description="fig1, fig2, fig3 or custom")
    n_users: int = Field(FIG_USERS, ge=1)
    n_influencers: int = Field(FIG_INFLUENCERS, ge=1)
    edge_probability: float = Field(FIG_EDGE_PROBABILITY, ge=0.0, le=1.0)
    quality: Optional[List[float]] = Field(None, description="Explicit quality vector")
    zero_weights: List[str] = Field(
        default_factory=list, description="Weights forced to zero (custom protocol)"
    )
    unit_lower_bound: Optional[bool] = Field(
        None, description="Rescale x0 so that z(0) >= 1 (default: fig2 only)"
    )
    horizon: int = Field(10_000, ge=1)
    tol: float = Field(1e-10, gt=0.0)
    record_every: int = Field(1, ge=1)

    @field_validator("zero_weights")
    @classmethod
    def validate_zero_weights(cls, value: List[str]) -> List[str]:
        unknown = sorted(set(value) - set(WEIGHT_NAMES))
        if unknown:
            raise ValueError(f"unknown weight names {unknown}")
        if len(set(value)) == len(WEIGHT_NAMES):
            raise ValueError("at least one weight must stay positive")
        return sorted(set(value))

    @field_validator("quality")
    @classmethod
    def validate_quality(cls, value: Optional[List[float]]) -> Optional[List[float]]:
        if value is not None and (not value or any(not 0.0 <= v <= 1.0 for v in value)):
            raise ValueError("quality must be a nonempty list of values in [0, 1]")
        return value


class Trajectory(BaseModel):
    """Recorded states of a run with their popularity and totals."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    times: List[int]
    states: List[AttentionState]
    popularity: List[PopularityVector]
    totals: List[AttentionTotals]

    @model_validator(mode="after")
    def validate_parallel(self) -> "Trajectory":
        sequences = (self.times, self.states, self.popularity, self.totals)
        lengths = {len(sequence) for sequence in sequences}
        if len(lengths) != 1:
            raise ValueError("trajectory sequences must have equal length")
        if any(b <= a for a, b in zip(self.times, self.times[1:])):
            raise ValueError("recorded times must be increasing")
        return self

    def __len__(self) -> int:
        return len(self.times)

    @property
    def terminal(self) -> AttentionState:
        return self.states[-1]

    def stacked_states(self) -> np.ndarray:
        """Recorded states as an array of shape (records, n, m)."""
        return np.stack([state.x for state in self.states])


class ConvergenceReport(BaseModel):
    """Empirical convergence of a run and, when available, its gap to theory."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    converged: bool
    t_converged: Optional[int] = None
    terminal_state: AttentionState
    terminal_popularity: PopularityVector
    estimated_rate: Optional[float] = None
    theory_delta: Optional[float] = None
    final_difference: Optional[float] = Field(
        None, description="Max-norm change between the last two records"
    )
    regime: Optional[Regime] = None
    certificate: Optional[SchurCertificate] = None
    consensus_gap: Optional[List[float]] = None
    fixed_point_residual: Optional[float] = Field(
        None, description="Max-norm change of one more step from the terminal state"
    )
    predicted_popularity: Optional[List[Optional[float]]] = None
    hypotheses: Dict[str, bool] = Field(default_factory=dict)
    warnings: List[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def validate_convergence_time(self) -> "ConvergenceReport":
        if self.converged and self.t_converged is None:
            raise ValueError("a converged report needs t_converged")
        return self
