"""Structured logging configuration using structlog."""

import logging
import sys
from typing import Any, Dict, Optional

import numpy as np
import structlog
from structlog.types import EventDict, Processor

from src.constants import APP_NAME


def add_app_context(
    logger: logging.Logger, method_name: str, event_dict: EventDict
) -> EventDict:
    """
    Add application context to log events.

    Args:
        logger: Logger instance
        method_name: Method name being called
        event_dict: Event dictionary

    Returns:
        Updated event dictionary with app context
    """
    event_dict["app"] = APP_NAME
    return event_dict


def add_log_level(
    logger: logging.Logger, method_name: str, event_dict: EventDict
) -> EventDict:
    """
    Add log level to event dictionary.

    Args:
        logger: Logger instance
        method_name: Method name being called
        event_dict: Event dictionary

    Returns:
        Updated event dictionary with log level
    """
    if method_name == "warn":
        # Normalize 'warn' to 'warning'
        event_dict["level"] = "warning"
    else:
        event_dict["level"] = method_name
    return event_dict


def summarize_arrays(
    logger: logging.Logger, method_name: str, event_dict: EventDict
) -> EventDict:
    """
    Replace numpy arrays in log events by a compact summary.

    Matrices of a few hundred entries would otherwise flood the log, and the
    JSON renderer cannot serialize them at all.

    Args:
        logger: Logger instance
        method_name: Method name being called
        event_dict: Event dictionary

    Returns:
        Updated event dictionary with arrays summarized
    """
    for key in list(event_dict.keys()):
        value = event_dict[key]
        if isinstance(value, np.ndarray):
            event_dict[key] = _summarize(value)
        elif isinstance(value, np.generic):
            event_dict[key] = value.item()
    return event_dict


def _summarize(array: np.ndarray) -> Dict[str, Any]:
    """
    Build a JSON-friendly summary of an array.

    Args:
        array: Array to summarize

    Returns:
        Dictionary with shape and, for non-empty numeric arrays, the range
    """
    summary: Dict[str, Any] = {"shape": list(array.shape)}
    if array.size and np.issubdtype(array.dtype, np.number):
        summary["min"] = float(np.min(array))
        summary["max"] = float(np.max(array))
    return summary


def configure_logging(
    log_level: str = "INFO",
    json_logs: bool = False,
    include_timestamp: bool = True,
) -> None:
    """
    Configure structured logging for the application.

    Args:
        log_level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        json_logs: Whether to output logs in JSON format
        include_timestamp: Whether to include timestamps in logs
    """
    # Convert log level string to logging constant
    numeric_level = getattr(logging, log_level.upper(), logging.INFO)

    # Standard output carries command results, logs go to stderr
    logging.basicConfig(
        format="%(message)s",
        stream=sys.stderr,
        level=numeric_level,
    )
    logging.getLogger().setLevel(numeric_level)

    processors: list[Processor] = [
        structlog.contextvars.merge_contextvars,
        add_app_context,
        add_log_level,
        structlog.stdlib.add_logger_name,
        summarize_arrays,
        structlog.processors.StackInfoRenderer(),
        structlog.processors.format_exc_info,
    ]

    if include_timestamp:
        processors.append(structlog.processors.TimeStamper(fmt="iso"))

    if json_logs:
        processors.append(structlog.processors.JSONRenderer())
    else:
        processors.append(
            structlog.dev.ConsoleRenderer(
                colors=False,
                exception_formatter=structlog.dev.plain_traceback,
            )
        )

    structlog.configure(
        processors=processors,
        wrapper_class=structlog.stdlib.BoundLogger,
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        cache_logger_on_first_use=True,
    )


def get_logger(name: Optional[str] = None) -> structlog.stdlib.BoundLogger:
    """
    Get a structured logger instance.

    Args:
        name: Logger name (typically __name__ of the calling module)

    Returns:
        Structured logger instance
    """
    return structlog.get_logger(name)


def log_command(
    logger: structlog.stdlib.BoundLogger,
    command: str,
    params: Dict[str, Any],
) -> None:
    """
    Log the start of a CLI command.

    Args:
        logger: Logger instance
        command: Name of the subcommand
        params: Command arguments
    """
    logger.info(
        "command_started",
        command=command,
        params=params,
        event_type="command",
    )


def log_command_result(
    logger: structlog.stdlib.BoundLogger,
    command: str,
    success: bool,
    exit_code: int,
    error: Optional[str] = None,
) -> None:
    """
    Log the outcome of a CLI command.

    Args:
        logger: Logger instance
        command: Name of the subcommand
        success: Whether the command succeeded
        exit_code: Process exit code returned by the command
        error: Error type if the command failed
    """
    log_data: Dict[str, Any] = {
        "command": command,
        "success": success,
        "exit_code": exit_code,
        "event_type": "result",
    }

    if error:
        log_data["error"] = error
        logger.warning("command_finished", **log_data)
    else:
        logger.info("command_finished", **log_data)


def log_solver(
    logger: structlog.stdlib.BoundLogger,
    routine: str,
    iterations: int,
    residual: Optional[float] = None,
    duration_ms: Optional[float] = None,
    converged: bool = True,
) -> None:
    """
    Log a summary of an iterative numerical routine.

    Args:
        logger: Logger instance
        routine: Name of the routine (e.g. "power_iteration")
        iterations: Number of iterations performed
        residual: Final residual or stopping quantity
        duration_ms: Wall time in milliseconds
        converged: Whether the stopping rule was met
    """
    log_data: Dict[str, Any] = {
        "routine": routine,
        "iterations": iterations,
        "converged": converged,
        "event_type": "solver",
    }

    if residual is not None:
        log_data["residual"] = float(residual)

    if duration_ms is not None:
        log_data["duration_ms"] = round(duration_ms, 2)

    if converged:
        logger.debug("solver_finished", **log_data)
    else:
        logger.warning("solver_finished", **log_data)
