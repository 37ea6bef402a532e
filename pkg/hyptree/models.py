"""Data models for hyptree run records."""

import math
from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class Method(str, Enum):
    """Tree inference methods compared by the study harness."""

    NJ = "nj"
    HYPERBOLIC = "hyperbolic"


class InitMode(str, Enum):
    """Starting configuration of the hyperbolic fit."""

    TREE = "tree"
    RANDOM = "random"


class TreeShape(str, Enum):
    """Generating tree shapes offered by the simulator."""

    RANDOM = "random"
    BALANCED = "balanced"


class StudyKind(str, Enum):
    """Kinds of evaluation study."""

    TAXA = "taxa"
    LENGTH = "length"
    CURVATURE = "curvature"


class TraceRecord(BaseModel):
    """Snapshot of an optimization run, emitted every trace_every sweeps."""

    model_config = ConfigDict(populate_by_name=True)

    iteration: int = Field(..., ge=0)
    objective: float
    max_step_taken: float = Field(..., ge=0, alias="max_step")
    rf_to_reference: Optional[int] = Field(None, ge=0, alias="rf")
    tree_loglik: Optional[float] = None

    @model_validator(mode="after")
    def check_finite(self) -> "TraceRecord":
        if not math.isfinite(self.objective):
            raise ValueError("objective must be finite")
        return self

    def to_json(self) -> str:
        """Serialize with the short field names used in trace files."""
        return self.model_dump_json(by_alias=True)


class RunManifest(BaseModel):
    """Everything needed to re-run a command and reproduce its outputs."""

    command: str
    seed: int
    arguments: Dict[str, Any] = Field(default_factory=dict)
    hyperparameters: Dict[str, Any] = Field(default_factory=dict)
    inputs: List[str] = Field(default_factory=list)
    outputs: List[str] = Field(default_factory=list)
    version: str
    timestamp: str


class StudyRecord(BaseModel):
    """One (grid value, tree, replicate, method) row of a study."""

    kind: StudyKind
    grid_value: float
    tree_id: int = Field(..., ge=0)
    replicate: int = Field(..., ge=0)
    method: Method
    rf_distance: Optional[int] = Field(None, ge=0)
    topology_match: Optional[bool] = None
    loglik_inferred: Optional[float] = None
    loglik_generating: Optional[float] = None
    loglik_success: Optional[bool] = None
    converged: Optional[bool] = None
    wall_time_s: float = Field(0.0, ge=0)
    error: Optional[str] = None

    @model_validator(mode="after")
    def check_identities(self) -> "StudyRecord":
        if self.rf_distance is not None:
            if self.topology_match is None:
                self.topology_match = self.rf_distance == 0
            elif self.topology_match != (self.rf_distance == 0):
                raise ValueError("topology_match must equal (rf_distance == 0)")
        if self.loglik_inferred is not None and self.loglik_generating is not None:
            success = self.loglik_inferred >= self.loglik_generating
            if self.loglik_success is None:
                self.loglik_success = success
            elif self.loglik_success != success:
                raise ValueError("loglik_success must equal (loglik_inferred >= loglik_generating)")
        return self


class CurvatureRecord(BaseModel):
    """Fitted distance from the first leaf to another leaf at one (rho, m)."""

    rho: float = Field(..., gt=0)
    dim: int = Field(..., ge=2)
    taxon: str
    tree_distance: float = Field(..., ge=0)
    fitted_distance: float = Field(..., ge=0)
    converged: bool
