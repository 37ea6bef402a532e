"""Configuration settings for hyptree."""

from enum import Enum
from functools import lru_cache
from typing import Optional

from pydantic import BaseModel, Field, model_validator
from pydantic_settings import BaseSettings


class SweepMode(str, Enum):
    """Order in which the points of a configuration are updated."""

    GAUSS_SEIDEL = "gauss-seidel"
    JACOBI = "jacobi"


class OptimizerSettings(BaseModel):
    """Gradient ascent hyperparameters."""

    learning_rate: float = Field(0.1, gt=0, description="Multiple of the gradient taken per step")
    max_step: float = Field(0.05, gt=0, description="Longest distance a point may move per step")
    convergence_threshold: float = Field(
        5e-5, gt=0, description="Converged once no point moves further than this in a sweep"
    )
    max_iterations: int = Field(10000, gt=0, description="Sweep budget")
    trace_every: int = Field(10, gt=0, description="Sweeps between trace records")
    mode: SweepMode = Field(SweepMode.GAUSS_SEIDEL, description="Sweep update order")

    @model_validator(mode="after")
    def check_step_bounds(self) -> "OptimizerSettings":
        if self.max_step < self.convergence_threshold:
            raise ValueError("max_step must be at least convergence_threshold")
        return self


class HyptreeSettings(BaseSettings):
    """Run defaults, overridable through HYPTREE_* environment variables."""

    rho: float = Field(0.5, gt=0, description="Hyperboloid radius")
    dim: int = Field(30, ge=2, description="Hyperbolic dimension m")
    learning_rate: float = Field(0.1, gt=0)
    max_step: float = Field(0.05, gt=0)
    convergence_threshold: float = Field(5e-5, gt=0)
    max_iterations: int = Field(10000, gt=0)
    trace_every: int = Field(10, gt=0)
    distance_cap: float = Field(
        10.0, gt=0, description="Distance reported for saturated pairs (substitutions/site)"
    )
    seed: int = Field(0, description="Master random seed")
    debug: bool = Field(False, description="Enable debug logging")
    log_file: Optional[str] = Field(None, description="Optional log file path")

    model_config = {
        "env_file": ".env",
        "env_prefix": "HYPTREE_",
        "case_sensitive": False,
        "extra": "ignore",
    }

    def optimizer_settings(self) -> OptimizerSettings:
        """Build optimizer settings from the configured defaults."""
        return OptimizerSettings(
            learning_rate=self.learning_rate,
            max_step=self.max_step,
            convergence_threshold=self.convergence_threshold,
            max_iterations=self.max_iterations,
            trace_every=self.trace_every,
        )


@lru_cache(maxsize=1)
def get_settings() -> HyptreeSettings:
    """Return the process-wide settings instance."""
    return HyptreeSettings()


# Saturation cap used when no settings object is threaded through.
DEFAULT_DISTANCE_CAP = 10.0

# DNA alphabet in encoding order.
ALPHABET = "ACGT"
