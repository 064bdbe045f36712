"""
fregress Configuration Management
Uses pydantic-settings for type-safe environment variable loading
"""

from dotenv import load_dotenv
from typing import Literal
from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

# Load .env file globally so os.getenv() works everywhere
load_dotenv()


class SolverSettings(BaseSettings):
    """Numerical controls shared by the kernel, estimator and tuning layers"""

    model_config = SettingsConfigDict(
        env_prefix="FREG_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore"
    )

    # Outer loop (iterative coordinate descent)
    epsilon: float = Field(default=1e-8, gt=0, description="Absolute objective-decrease tolerance")
    l_max: int = Field(default=10_000, ge=1, description="Maximum outer iterations")

    # Inner safety valves
    max_group_passes: int = Field(default=100, ge=1, description="Maximum passes over groups per B update")
    max_coordinate_passes: int = Field(default=100, ge=1, description="Maximum passes over coordinates per group")

    # Spectral policy
    eigen_floor: float = Field(
        default=1e-12,
        gt=0,
        description="Eigenvalues below max(eigenvalue) * eigen_floor are floored before powers"
    )
    psd_tolerance: float = Field(
        default=1e-8,
        gt=0,
        description="Relative negative-eigenvalue tolerance before a matrix is rejected as not PSD"
    )
    symmetry_tolerance: float = Field(default=1e-10, gt=0, description="Relative asymmetry tolerance")

    # Quadrature
    simpson_nodes: int = Field(default=2049, ge=3, description="Simpson nodes for oracle integrals")

    # Parallelism for cross-validation and bench replicates
    n_jobs: int = Field(default=1, ge=1, description="Worker threads (1 = sequential)")

    @field_validator("simpson_nodes")
    @classmethod
    def validate_simpson_nodes(cls, v):
        if v % 2 == 0:
            return v + 1
        return v


class LogSettings(BaseSettings):
    """Logging configuration for the CLI"""

    model_config = SettingsConfigDict(
        env_prefix="FREG_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore"
    )

    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = Field(default="INFO")
    log_format: Literal["json", "text"] = Field(default="text")


# Singleton instances
_solver_settings: SolverSettings | None = None
_log_settings: LogSettings | None = None


def get_solver_settings() -> SolverSettings:
    """Get or create solver settings singleton"""
    global _solver_settings
    if _solver_settings is None:
        _solver_settings = SolverSettings()
    return _solver_settings


def get_log_settings() -> LogSettings:
    """Get or create log settings singleton"""
    global _log_settings
    if _log_settings is None:
        _log_settings = LogSettings()
    return _log_settings


def reset_settings() -> None:
    """Drop cached singletons so the next access re-reads the environment"""
    global _solver_settings, _log_settings
    _solver_settings = None
    _log_settings = None
