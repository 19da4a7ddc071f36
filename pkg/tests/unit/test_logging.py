"""Unit tests for structured logging."""

import logging

import numpy as np

from src.utils.logging import (
    configure_logging,
    get_logger,
    log_command,
    log_command_result,
    log_solver,
    summarize_arrays,
)


class TestLoggingConfiguration:
    """Test logging configuration."""

    def test_configure_logging_info_level(self):
        """Test configuring logging at INFO level."""
        configure_logging(log_level="INFO", json_logs=False)
        logger = get_logger(__name__)
        assert logger is not None
        # Logger can be either BoundLogger or BoundLoggerLazyProxy
        assert hasattr(logger, "info")
        assert hasattr(logger, "error")
        assert logging.getLogger().level == logging.INFO

    def test_configure_logging_debug_level(self):
        """Test configuring logging at DEBUG level."""
        configure_logging(log_level="DEBUG", json_logs=False)
        assert logging.getLogger().level == logging.DEBUG

    def test_configure_logging_json_format(self):
        """Test configuring logging with JSON output."""
        configure_logging(log_level="INFO", json_logs=True)
        logger = get_logger(__name__)
        assert logger is not None

    def test_configure_logging_without_timestamp(self):
        """Test configuring logging without timestamps."""
        configure_logging(log_level="INFO", json_logs=False, include_timestamp=False)
        logger = get_logger(__name__)
        assert logger is not None

    def test_unknown_level_falls_back_to_info(self):
        configure_logging(log_level="chatty")
        assert logging.getLogger().level == logging.INFO


class TestArraySummaries:
    """Numpy values in log events are replaced by JSON-friendly summaries."""

    def test_array_becomes_shape_and_range(self):
        event = summarize_arrays(None, "info", {"matrix": np.array([[1.0, -2.0]])})
        assert event["matrix"] == {"shape": [1, 2], "min": -2.0, "max": 1.0}

    def test_empty_array_has_only_shape(self):
        event = summarize_arrays(None, "info", {"empty": np.empty((0, 3))})
        assert event["empty"] == {"shape": [0, 3]}

    def test_numpy_scalar_becomes_python_scalar(self):
        event = summarize_arrays(None, "info", {"rho": np.float64(0.5)})
        assert event["rho"] == 0.5
        assert isinstance(event["rho"], float)

    def test_other_values_untouched(self):
        event = summarize_arrays(None, "info", {"n": 3, "name": "x"})
        assert event == {"n": 3, "name": "x"}


class TestCommandLogging:
    """Test command and solver logging helpers."""

    def test_log_command(self, caplog):
        configure_logging(log_level="INFO", json_logs=False)
        logger = get_logger(__name__)

        with caplog.at_level(logging.INFO):
            log_command(logger, "simulate", {"scenario": "a.json"})

        assert any("command_started" in r.getMessage() for r in caplog.records)

    def test_log_command_result_failure_is_warning(self, caplog):
        configure_logging(log_level="INFO", json_logs=False)
        logger = get_logger(__name__)

        with caplog.at_level(logging.INFO):
            log_command_result(
                logger, "verify", success=False, exit_code=5, error="failed"
            )

        assert any(r.levelno == logging.WARNING for r in caplog.records)

    def test_log_solver_unconverged_is_warning(self, caplog):
        configure_logging(log_level="DEBUG", json_logs=False)
        logger = get_logger(__name__)

        with caplog.at_level(logging.DEBUG):
            log_solver(logger, "power_iteration", 10, residual=1e-3, converged=False)

        assert any(r.levelno == logging.WARNING for r in caplog.records)
