"""Pydantic models for equilibria, stability certificates and bounds."""

from enum import Enum
from typing import Any, Dict, List, Optional

import numpy as np
from numpy.polynomial import Polynomial
from pydantic import BaseModel, ConfigDict, Field, computed_field, model_validator

from src.models.arrays import FloatArray


class Regime(str, Enum):
    """Which weight vector vanishes identically."""

    NO_NETWORK = "no_network"  # alpha == 0
    NO_QUALITY = "no_quality"  # gamma == 0
    NO_RECOMMENDATION = "no_recommendation"  # beta == 0
    GENERAL = "general"


class AugmentedSystem(BaseModel):
    """Limit matrices of the joint attention-popularity dynamics."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    U_tilde: FloatArray = Field(..., description="(n+1) x (n+1) limit matrix")
    c_tilde: FloatArray = Field(..., description="(n+1) limit input vector")
    z_star: FloatArray = Field(..., description="Limit of the attention totals")
    lambda1: float = Field(..., ge=0.0, description="Spectral radius of AP")
    lambda2: float = Field(..., ge=0.0, description="Subdominant modulus of U_tilde")

    @model_validator(mode="after")
    def validate_shapes(self) -> "AugmentedSystem":
        size = self.z_star.size + 1
        if self.U_tilde.shape != (size, size) or self.c_tilde.shape != (size,):
            raise ValueError("augmented matrices must have one more row than z_star")
        return self

    @property
    def n(self) -> int:
        return int(self.z_star.size)

    def row_sums(self) -> np.ndarray:
        return self.U_tilde.sum(axis=1)


class SeriesPolynomial(BaseModel):
    """
    Numerator polynomial of the closed form of sum_k k^n lam^k.

    `coefficients` are in ascending powers. The polynomial built for exponent
    n has degree n - 1 and constant coefficient 1.
    """

    model_config = ConfigDict(frozen=True)

    degree: int = Field(..., ge=0)
    coefficients: List[float] = Field(..., min_length=1)

    @model_validator(mode="after")
    def validate_normalized(self) -> "SeriesPolynomial":
        if self.coefficients[0] != 1.0:
            raise ValueError("constant coefficient must be 1")
        if len(self.coefficients) != self.degree + 1:
            raise ValueError("degree does not match the number of coefficients")
        return self

    def as_polynomial(self) -> Polynomial:
        return Polynomial(self.coefficients)

    def __call__(self, lam: float) -> float:
        return float(self.as_polynomial()(lam))


class DistanceBound(BaseModel):
    """Bound on ||phi - phi_tilde||_1 up to the unknown constant chi."""

    model_config = ConfigDict(frozen=True)

    value: float = Field(..., ge=0.0, description="Bound evaluated with chi = 1")
    chi: float = Field(1.0, description="Constant used for `value`")
    chi_unknown: bool = Field(
        True, description="The true constant is unknown; only trends are meaningful"
    )
    lambda1: float
    n: int
    z0_deviation: float


class SchurCertificate(BaseModel):
    """Machine-checkable hypotheses of the convergence results for one regime."""

    model_config = ConfigDict(frozen=True)

    regime: Regime
    deficiency_set: List[int] = Field(
        ..., description="Nodes with alpha_w < 1 (gamma_w > 0 for the general regime)"
    )
    every_node_reaches: bool
    aperiodic_deficient_reachable: bool
    lambda1: float = Field(..., description="Spectral radius of AP")
    q_tot_at_least_one: Optional[bool] = None
    z0_at_least_one: Optional[bool] = None
    hypotheses: Dict[str, bool] = Field(default_factory=dict)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def schur_stable(self) -> bool:
        return self.lambda1 < 1.0

    @computed_field  # type: ignore[prop-decorator]
    @property
    def hypotheses_hold(self) -> bool:
        return all(self.hypotheses.values())

    def unmet(self) -> List[str]:
        return [name for name, holds in self.hypotheses.items() if not holds]


class EquilibriumReport(BaseModel):
    """Predicted limits of a scenario, computed without simulating."""

    regime: Regime
    certificate: SchurCertificate
    z_star: Optional[List[float]] = None
    lambda1: Optional[float] = None
    lambda2: Optional[float] = None
    fixed_point: Dict[str, Any] = Field(default_factory=dict)
    warnings: List[str] = Field(default_factory=list)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def hypotheses(self) -> Dict[str, bool]:
        return dict(self.certificate.hypotheses)
