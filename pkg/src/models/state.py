"""Pydantic models for the state space of the attention dynamics."""

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, computed_field, model_validator

from src.config import settings
from src.constants import BOX_SLACK
from src.models.arrays import FloatArray, as_readonly_float_array


def _check_unit_interval(name: str, values: np.ndarray) -> None:
    if np.any(values < 0.0) or np.any(values > 1.0):
        raise ValueError(f"{name} must lie in [0, 1]")


class ModelParams(BaseModel):
    """Per-user interaction, recommendation and quality weights."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    alpha: FloatArray = Field(..., description="Social-influence weights")
    beta: FloatArray = Field(..., description="Recommendation weights")
    gamma: FloatArray = Field(..., description="Quality weights")

    @model_validator(mode="after")
    def validate_weights(self) -> "ModelParams":
        """Ensure the three weight vectors form a convex combination per user."""
        shapes = {self.alpha.shape, self.beta.shape, self.gamma.shape}
        if len(shapes) != 1 or self.alpha.ndim != 1 or self.alpha.size == 0:
            raise ValueError("alpha, beta and gamma must be equal-length vectors")
        for name in ("alpha", "beta", "gamma"):
            _check_unit_interval(name, getattr(self, name))
        deviation = np.max(np.abs(self.alpha + self.beta + self.gamma - 1.0))
        if deviation > settings.row_sum_tol:
            raise ValueError(
                "alpha + beta + gamma must equal 1 for every user "
                f"(max deviation {deviation:.3e})"
            )
        return self

    @property
    def n(self) -> int:
        """Number of users."""
        return int(self.alpha.size)

    def A(self) -> np.ndarray:
        """Diagonal matrix of the alpha weights."""
        return np.diag(self.alpha)

    def B(self) -> np.ndarray:
        """Diagonal matrix of the beta weights."""
        return np.diag(self.beta)

    def Gamma(self) -> np.ndarray:
        """Diagonal matrix of the gamma weights."""
        return np.diag(self.gamma)


class QualityVector(BaseModel):
    """Content quality q^(i) of each influencer."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    q: FloatArray = Field(..., description="Quality per influencer in [0, 1]")

    @model_validator(mode="after")
    def validate_quality(self) -> "QualityVector":
        if self.q.ndim != 1 or self.q.size == 0:
            raise ValueError("quality must be a nonempty vector")
        _check_unit_interval("quality", self.q)
        return self

    @computed_field  # type: ignore[prop-decorator]
    @property
    def q_tot(self) -> float:
        """Total quality over all influencers."""
        return float(np.sum(self.q))

    @property
    def m(self) -> int:
        """Number of influencers."""
        return int(self.q.size)


class AttentionState(BaseModel):
    """Attention x_v^(i)(t) of every user to every influencer at time t.

    Rows are users and columns are influencers. Entries that leave [0, 1] by
    rounding noise only are clipped back onto the box.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    x: FloatArray = Field(..., description="n x m attention matrix")
    t: int = Field(0, ge=0, description="Time index")

    @model_validator(mode="before")
    @classmethod
    def clip_rounding_noise(cls, data: object) -> object:
        if isinstance(data, dict) and "x" in data:
            x = as_readonly_float_array(data["x"])
            inside = x.size and x.min() >= -BOX_SLACK and x.max() <= 1.0 + BOX_SLACK
            if x.ndim == 2 and inside:
                x = np.clip(x, 0.0, 1.0)
            data = {**data, "x": x}
        return data

    @model_validator(mode="after")
    def validate_box(self) -> "AttentionState":
        if self.x.ndim != 2 or 0 in self.x.shape:
            raise ValueError("attention must be a nonempty users x influencers matrix")
        _check_unit_interval("attention", self.x)
        return self

    @property
    def n(self) -> int:
        """Number of users."""
        return int(self.x.shape[0])

    @property
    def m(self) -> int:
        """Number of influencers."""
        return int(self.x.shape[1])

    def total_attention(self) -> float:
        return float(np.sum(self.x))


class PopularityVector(BaseModel):
    """Normalized popularity index pi^(i) of every influencer."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    pi: FloatArray = Field(..., description="Popularity on the simplex")

    @model_validator(mode="after")
    def validate_simplex(self) -> "PopularityVector":
        if self.pi.ndim != 1 or self.pi.size == 0:
            raise ValueError("popularity must be a nonempty vector")
        if np.any(self.pi < 0.0):
            raise ValueError("popularity must be nonnegative")
        if abs(float(np.sum(self.pi)) - 1.0) > settings.row_sum_tol:
            raise ValueError("popularity must sum to 1")
        return self


class AttentionTotals(BaseModel):
    """Aggregate attention z_v = sum_i x_v^(i) of every user."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    z: FloatArray = Field(..., description="Per-user total attention")

    @model_validator(mode="after")
    def validate_nonnegative(self) -> "AttentionTotals":
        if self.z.ndim != 1 or self.z.size == 0:
            raise ValueError("totals must be a nonempty vector")
        if np.any(self.z < 0.0):
            raise ValueError("totals must be nonnegative")
        return self

    @property
    def n(self) -> int:
        return int(self.z.size)

    def at_least_one(self, slack: float = 0.0) -> bool:
        """Whether z >= 1 componentwise, up to `slack`."""
        return bool(np.all(self.z >= 1.0 - slack))

    def deviation_from_one(self) -> float:
        """The l1 distance ||z - 1||_1."""
        return float(np.sum(np.abs(self.z - 1.0)))
