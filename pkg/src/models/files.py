"""Pydantic schemas of the scenario file and the run manifest."""

from typing import Annotated, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field

from src.constants import FIG_EDGE_PROBABILITY


class ErdosRenyiGraphSpec(BaseModel):
    """Random influence graph drawn at load time."""

    model_config = ConfigDict(extra="forbid")

    type: Literal["erdos_renyi"]
    n: int = Field(..., ge=1, description="Number of users")
    p: float = Field(
        FIG_EDGE_PROBABILITY, ge=0.0, le=1.0, description="Edge probability"
    )
    seed: int = Field(..., ge=0, lt=2**64)


class ExplicitGraphSpec(BaseModel):
    """Influence weights given row by row."""

    model_config = ConfigDict(extra="forbid")

    type: Literal["explicit"]
    rows: List[List[float]] = Field(..., min_length=1)
    normalize: bool = Field(True, description="Divide every row by its sum")


GraphSpec = Annotated[
    Union[ErdosRenyiGraphSpec, ExplicitGraphSpec], Field(discriminator="type")
]


class ExplicitParamsSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    alpha: List[float]
    beta: List[float]
    gamma: List[float]


class ProtocolParamsSpec(BaseModel):
    """Weights drawn from a reference protocol."""

    model_config = ConfigDict(extra="forbid")

    protocol: str = Field(..., description="fig1, fig2, fig3 or custom")
    seed: int = Field(..., ge=0, lt=2**64)
    zero_weights: List[str] = Field(default_factory=list)


class ExplicitStateSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    explicit: List[List[float]] = Field(..., min_length=1)


class UniformStateSpec(BaseModel):
    """Initial attention drawn uniformly from [0, 1]."""

    model_config = ConfigDict(extra="forbid")

    uniform_seed: int = Field(..., ge=0, lt=2**64)
    unit_lower_bound: bool = Field(
        False, description="Rescale rows so that every user total is at least 1"
    )


class ScenarioFile(BaseModel):
    """JSON document describing a scenario."""

    model_config = ConfigDict(extra="forbid")

    graph: GraphSpec
    params: Union[ExplicitParamsSpec, ProtocolParamsSpec]
    quality: List[float] = Field(..., min_length=1)
    x0: Union[ExplicitStateSpec, UniformStateSpec]
    horizon: int = Field(..., ge=1)
    tol: float = Field(..., gt=0.0)
    record_every: int = Field(1, ge=1)
    seed: Optional[int] = Field(
        None, ge=0, lt=2**64, description="Recorded scenario seed"
    )


class RunManifest(BaseModel):
    """Reproducibility receipt of a command run."""

    command: str
    input_path: str
    input_digest: str = Field(..., description="SHA-256 of the scenario file bytes")
    resolved_seeds: Dict[str, Optional[int]] = Field(default_factory=dict)
    seed_override: Optional[int] = None
    version: str
    outputs: List[str] = Field(default_factory=list)
    exit_code: int = 0
