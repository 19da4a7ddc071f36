"""Data models for the popularity dynamics package."""

from src.models.equilibria import (
    AugmentedSystem,
    DistanceBound,
    EquilibriumReport,
    Regime,
    SchurCertificate,
    SeriesPolynomial,
)
from src.models.errors import ErrorResponse, ExitCode, ValidationErrorResponse
from src.models.files import RunManifest, ScenarioFile
from src.models.graph import NodeSet, RowStochasticMatrix
from src.models.simulation import (
    ConvergenceReport,
    ProtocolSpec,
    Scenario,
    Trajectory,
)
from src.models.state import (
    AttentionState,
    AttentionTotals,
    ModelParams,
    PopularityVector,
    QualityVector,
)

__all__ = [
    # Model inputs
    "RowStochasticMatrix",
    "NodeSet",
    "ModelParams",
    "QualityVector",
    "AttentionState",
    "AttentionTotals",
    "PopularityVector",
    # Theory
    "Regime",
    "AugmentedSystem",
    "SeriesPolynomial",
    "DistanceBound",
    "SchurCertificate",
    "EquilibriumReport",
    # Simulation
    "Scenario",
    "ProtocolSpec",
    "Trajectory",
    "ConvergenceReport",
    # Files
    "ScenarioFile",
    "RunManifest",
    # Error models
    "ErrorResponse",
    "ExitCode",
    "ValidationErrorResponse",
]
