"""Configuration management using Pydantic settings."""

import sys

from pydantic_settings import BaseSettings, SettingsConfigDict

_ENV_FILE = ".env"
if "pytest" in sys.modules:
    _ENV_FILE = None


class Settings(BaseSettings):
    """Application settings with environment variable support."""

    model_config = SettingsConfigDict(
        env_file=_ENV_FILE,
        env_file_encoding="utf-8",
        env_prefix="POPDYN_",
        case_sensitive=False,
    )

    log_level: str = "INFO"
    log_json: bool = False  # Whether to output logs in JSON format
    log_include_timestamp: bool = True  # Whether to include timestamps in logs

    # Structural tolerances
    row_sum_tol: float = 1e-12
    zero_cutoff: float = 1e-12
    residual_tol: float = 1e-10

    # Power iteration
    power_iteration_max_iter: int = 100_000
    power_iteration_rtol: float = 1e-12

    # Perturbed product accumulation
    consensus_tol: float = 1e-12
    consensus_horizon: int = 100_000

    # Convergence detection
    convergence_tol: float = 1e-10
    convergence_window: int = 10
    rate_band_low: float = 1e-14
    rate_band_high: float = 1e-2
    rate_min_points: int = 10

    verify_tolerance_factor: float = 100.0
    jobs: int = 1


# Global settings instance
settings = Settings()
