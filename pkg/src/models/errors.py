"""Error types, exit codes and the exception hierarchy."""

from enum import Enum, IntEnum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field


class ErrorType(str, Enum):
    """Enumeration of error types for categorization."""

    # Input errors
    VALIDATION_ERROR = "validation_error"
    PARSE_ERROR = "parse_error"
    INVALID_INPUT = "invalid_input"
    IO_ERROR = "io_error"

    # Matrix structure errors
    NON_SQUARE = "non_square"
    NEGATIVE_ENTRY = "negative_entry"
    ZERO_ROW = "zero_row"
    EMPTY_TARGETS = "empty_targets"
    DIMENSION_MISMATCH = "dimension_mismatch"
    INDEX_OUT_OF_RANGE = "index_out_of_range"

    # Numerical errors
    NO_CONVERGENCE = "no_convergence"
    NOT_UNIQUE = "not_unique"
    OVERFLOW = "overflow"
    SINGULAR_SYSTEM = "singular_system"
    DOMAIN_ERROR = "domain_error"
    ZERO_TOTAL_ATTENTION = "zero_total_attention"
    TOO_SHORT = "too_short"

    # Theory errors
    HYPOTHESIS_VIOLATED = "hypothesis_violated"
    STABILITY_CONDITION_UNMET = "stability_condition_unmet"
    AMBIGUOUS_REGIME = "ambiguous_regime"
    UNKNOWN_PROTOCOL = "unknown_protocol"
    VERIFICATION_FAILED = "verification_failed"

    # Everything else
    INTERNAL_ERROR = "internal_error"


class ExitCode(IntEnum):
    """Process exit codes of the command-line interface."""

    OK = 0
    INTERNAL = 1
    PARSE = 2
    MODEL = 3
    HYPOTHESES = 4
    VERIFICATION = 5


class ErrorResponse(BaseModel):
    """Standard error response model."""

    error: str = Field(..., description="Error type identifier")
    message: str = Field(..., description="Human-readable error message")
    details: Optional[Dict[str, Any]] = Field(
        None, description="Additional error details"
    )
    exit_code: Optional[int] = Field(
        None, description="Process exit code associated with the error"
    )


class ValidationError(BaseModel):
    """Individual validation error model."""

    loc: List[str] = Field(..., description="Location of the validation error")
    msg: str = Field(..., description="Error message")
    type: str = Field(..., description="Error type")


class ValidationErrorResponse(BaseModel):
    """Validation error response model."""

    error: str = Field(default="validation_error", description="Error type identifier")
    message: str = Field(..., description="Human-readable error message")
    validation_errors: List[ValidationError] = Field(
        ..., description="List of validation errors"
    )
    exit_code: int = Field(
        default=ExitCode.PARSE,
        description="Process exit code (2 for validation errors)",
    )

    @classmethod
    def from_pydantic_error(cls, exc: Exception) -> "ValidationErrorResponse":
        """
        Create a ValidationErrorResponse from a Pydantic ValidationError.

        Args:
            exc: Pydantic ValidationError exception

        Returns:
            ValidationErrorResponse instance
        """
        errors = []
        if hasattr(exc, "errors"):
            for error in exc.errors():
                errors.append(
                    ValidationError(
                        loc=[str(loc) for loc in error.get("loc", [])],
                        msg=error.get("msg", "Validation error"),
                        type=error.get("type", "value_error"),
                    )
                )

        return cls(
            error=ErrorType.VALIDATION_ERROR,
            message="Input validation failed",
            validation_errors=errors,
        )


class PopularityModelError(Exception):
    """Base exception for every failure raised by the numerical modules."""

    error_type: ErrorType = ErrorType.INTERNAL_ERROR
    exit_code: ExitCode = ExitCode.MODEL

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        """
        Initialize the exception.

        Args:
            message: A human-readable error message.
            details: Additional dictionary containing error specifics.
        """
        self.message = message
        self.details = details or {}
        super().__init__(self.message)

    def to_error_response(self) -> ErrorResponse:
        """Convert to ErrorResponse model."""
        return ErrorResponse(
            error=self.error_type,
            message=self.message,
            details=self.details.copy(),
            exit_code=int(self.exit_code),
        )


class ScenarioParseError(PopularityModelError):
    """A scenario file is not valid JSON or violates a constraint."""

    error_type = ErrorType.PARSE_ERROR
    exit_code = ExitCode.PARSE


class InvalidInputError(PopularityModelError):
    """An argument is outside the documented domain of an operation."""

    error_type = ErrorType.INVALID_INPUT
    exit_code = ExitCode.PARSE


class NonSquareError(PopularityModelError):
    error_type = ErrorType.NON_SQUARE


class NegativeEntryError(PopularityModelError):
    error_type = ErrorType.NEGATIVE_ENTRY


class ZeroRowError(PopularityModelError):
    """A user has no outgoing influence weight."""

    error_type = ErrorType.ZERO_ROW


class EmptyTargetsError(PopularityModelError):
    error_type = ErrorType.EMPTY_TARGETS


class DimensionMismatchError(PopularityModelError):
    error_type = ErrorType.DIMENSION_MISMATCH


class IndexOutOfRangeError(PopularityModelError):
    error_type = ErrorType.INDEX_OUT_OF_RANGE


class NoConvergenceError(PopularityModelError):
    error_type = ErrorType.NO_CONVERGENCE


class NotUniqueError(PopularityModelError):
    error_type = ErrorType.NOT_UNIQUE


class MatrixOverflowError(PopularityModelError):
    error_type = ErrorType.OVERFLOW


class SingularSystemError(PopularityModelError):
    error_type = ErrorType.SINGULAR_SYSTEM


class DomainError(PopularityModelError):
    error_type = ErrorType.DOMAIN_ERROR
    exit_code = ExitCode.PARSE


class ZeroTotalAttentionError(PopularityModelError):
    """Popularity is undefined because no user pays any attention."""

    error_type = ErrorType.ZERO_TOTAL_ATTENTION

    def __init__(
        self,
        message: str = "Total attention is zero; popularity is undefined",
        t: Optional[int] = None,
        details: Optional[Dict[str, Any]] = None,
    ):
        details = dict(details or {})
        if t is not None:
            details["t"] = t
        self.t = t
        super().__init__(message, details)


class TooShortError(PopularityModelError):
    error_type = ErrorType.TOO_SHORT


class HypothesisViolatedError(PopularityModelError):
    """A convergence hypothesis does not hold; `hypothesis` names which one."""

    error_type = ErrorType.HYPOTHESIS_VIOLATED
    exit_code = ExitCode.HYPOTHESES

    def __init__(
        self,
        message: str,
        hypothesis: str,
        details: Optional[Dict[str, Any]] = None,
    ):
        details = dict(details or {})
        details["hypothesis"] = hypothesis
        self.hypothesis = hypothesis
        super().__init__(message, details)


class StabilityConditionUnmetError(PopularityModelError):
    """Some node cannot reach the deficiency set, AP need not be Schur stable."""

    error_type = ErrorType.STABILITY_CONDITION_UNMET
    exit_code = ExitCode.HYPOTHESES


class AmbiguousRegimeError(PopularityModelError):
    error_type = ErrorType.AMBIGUOUS_REGIME
    exit_code = ExitCode.HYPOTHESES


class UnknownProtocolError(PopularityModelError):
    error_type = ErrorType.UNKNOWN_PROTOCOL
    exit_code = ExitCode.PARSE
