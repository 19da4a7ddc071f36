"""Centralized error handling utilities for consistent error responses."""

import json
import sys
from typing import Any, Callable, Dict, Optional, TextIO

from pydantic import ValidationError as PydanticValidationError

from src.models.errors import (
    ErrorResponse,
    ErrorType,
    ExitCode,
    PopularityModelError,
    ValidationErrorResponse,
)
from src.utils.logging import get_logger, log_command, log_command_result

logger = get_logger(__name__)


def handle_validation_error(exc: PydanticValidationError) -> Dict[str, Any]:
    """
    Handle Pydantic validation errors and return structured response.

    Args:
        exc: Pydantic ValidationError

    Returns:
        Dictionary with validation error response
    """
    logger.warning(
        "validation_error",
        error_count=len(exc.errors()),
        message="Input validation failed",
    )

    response = ValidationErrorResponse.from_pydantic_error(exc)
    return response.model_dump()


def handle_model_error(exc: PopularityModelError) -> Dict[str, Any]:
    """
    Handle errors raised by the numerical modules.

    Args:
        exc: Model exception with error_type/message/exit_code fields

    Returns:
        Dictionary with error response
    """
    log = logger.warning if exc.exit_code == ExitCode.PARSE else logger.error
    log(
        "model_error",
        error_type=exc.error_type.value,
        exit_code=int(exc.exit_code),
        message=exc.message,
    )

    return exc.to_error_response().model_dump()


def handle_parse_error(
    message: str, details: Optional[Dict[str, Any]] = None
) -> Dict[str, Any]:
    """
    Handle command-line or input parse errors.

    Args:
        message: Error message
        details: Additional context for the error

    Returns:
        Dictionary with error response
    """
    logger.warning("parse_error", message=message)

    response = ErrorResponse(
        error=ErrorType.PARSE_ERROR,
        message=message,
        exit_code=ExitCode.PARSE,
        details=details or {},
    )

    return response.model_dump()


def handle_generic_error(
    exc: Exception,
    error_type: str = ErrorType.INTERNAL_ERROR,
    exit_code: Optional[int] = None,
    context: Optional[Dict[str, Any]] = None,
) -> Dict[str, Any]:
    """
    Handle generic exceptions and return structured response.

    Args:
        exc: Exception to handle
        error_type: Type of error (from ErrorType enum)
        exit_code: Process exit code
        context: Additional context information

    Returns:
        Dictionary with error response
    """
    logger.error(
        "generic_error",
        error_type=error_type,
        error_message=str(exc),
        exc_info=True,
    )

    details = context or {}
    details["error_class"] = exc.__class__.__name__

    response = ErrorResponse(
        error=error_type,
        message=str(exc) or "An unexpected error occurred",
        exit_code=exit_code if exit_code is not None else ExitCode.INTERNAL,
        details=details,
    )

    return response.model_dump()


def categorize_error(exc: Exception) -> tuple[str, int]:
    """
    Categorize an exception and return error type and exit code.

    Args:
        exc: Exception to categorize

    Returns:
        Tuple of (error_type, exit_code)
    """
    if isinstance(exc, PydanticValidationError):
        return ErrorType.VALIDATION_ERROR, ExitCode.PARSE
    elif isinstance(exc, PopularityModelError):
        return exc.error_type, exc.exit_code
    elif isinstance(exc, OSError):
        return ErrorType.IO_ERROR, ExitCode.MODEL
    else:
        return ErrorType.INTERNAL_ERROR, ExitCode.INTERNAL


def emit_error(response: Dict[str, Any], stream: Optional[TextIO] = None) -> int:
    """
    Print an error response as one line of JSON and return its exit code.

    Args:
        response: Dictionary produced by one of the handlers above
        stream: Destination (standard error by default)

    Returns:
        The exit code carried by the response
    """
    print(
        json.dumps(response, separators=(",", ":"), default=str),
        file=stream or sys.stderr,
    )
    exit_code = response.get("exit_code")
    return int(exit_code) if exit_code is not None else int(ExitCode.INTERNAL)


def error_response(exc: Exception, command: str) -> Dict[str, Any]:
    """
    Build the error response for an exception raised by a command handler.

    Args:
        exc: Exception raised by the handler
        command: Name of the subcommand, recorded for unexpected failures

    Returns:
        Dictionary with error response
    """
    error_type, exit_code = categorize_error(exc)
    if isinstance(exc, PydanticValidationError):
        return handle_validation_error(exc)
    if isinstance(exc, PopularityModelError):
        return handle_model_error(exc)
    return handle_generic_error(
        exc, error_type=error_type, exit_code=exit_code, context={"command": command}
    )


def run_command(
    command: str,
    func: Callable[..., int],
    params: Dict[str, Any],
    **kwargs: Any,
) -> int:
    """
    Run a command handler and map every failure to one documented exit code.

    Args:
        command: Name of the subcommand
        func: Handler returning an exit code
        params: Parameters to log
        **kwargs: Arguments passed to the handler

    Returns:
        Process exit code
    """
    log_command(logger, command, params)

    try:
        exit_code = func(**kwargs)
        log_command_result(
            logger, command, success=exit_code == ExitCode.OK, exit_code=exit_code
        )
        return exit_code
    except Exception as e:
        response = error_response(e, command)
        exit_code = emit_error(response)
        log_command_result(
            logger, command, success=False, exit_code=exit_code, error=response["error"]
        )
        return exit_code
