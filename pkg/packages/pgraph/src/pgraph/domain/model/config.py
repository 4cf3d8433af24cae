"""Validated configuration of a single CLI run."""

from pathlib import Path
from typing import Literal, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

COMMANDS = (
    "apply",
    "energy",
    "gsr",
    "picone",
    "capacity",
    "null-seq",
    "harnack",
    "hardy",
    "liouville",
    "ineq-scan",
    "model-check",
    "ops",
)

# commands that never read a graph
GRAPHLESS = frozenset({"ineq-scan", "ops"})
# commands that only make sense for a built-in model family
MODEL_ONLY = frozenset({"null-seq", "liouville", "model-check"})
# commands allowed to run at p = 1
P_AT_LEAST_ONE = frozenset({"apply", "energy", "ops"})

ModelFamily = Literal["nat_line", "int_line", "grid2d", "star", "complete", "weighted_line"]

INEQ_KERNELS = ("ineq2", "gsr_like", "corollary", "ineq1", "ineq34", "ineq5", "lindqvist", "ptriangle", "cp")
CHECKS = {
    "null-seq": ("trend", "proper-subset", "transfer", "ground-state"),
    "harnack": ("bound", "positivity"),
    "ineq-scan": ("upper", "lower"),
}


class RunConfig(BaseModel):
    """Resolved configuration of one subcommand invocation."""

    command: str = Field(..., description="Subcommand name")
    graph: Optional[Path] = Field(None, description="Graph file (json or tsv)")
    vertices: Optional[Path] = Field(None, description="Sidecar vertex file for tsv graphs")
    model: Optional[ModelFamily] = Field(None, description="Built-in model family")
    radius: Optional[int] = Field(None, ge=1, description="Window radius for the model")
    weights: Optional[list[float]] = Field(None, description="Consecutive weights for weighted_line")
    potential: float = Field(0.0, description="Uniform potential c of the model")
    p: float = Field(2.0, description="Exponent p")
    root: Optional[str] = Field(None, description="Root / pinned vertex label")
    subset: Optional[list[str]] = Field(None, description="Vertex labels of V or K")
    u: Optional[Literal["hardy", "const", "file"]] = Field(None, description="Choice of u")
    u_file: Optional[Path] = None
    u_const: float = Field(1.0, description="Value of u for --u const")
    phi: Optional[Literal["random", "file"]] = Field(None, description="Choice of phi")
    phi_file: Optional[Path] = None
    seed: int = 0
    tol: Optional[float] = Field(None, gt=0)
    radii: Optional[list[int]] = Field(None, description="Exhaustion radii")
    alpha: float = Field(1.0, gt=0)
    beta: float = Field(1.0, gt=0)
    tilde_scale: float = Field(1.0, gt=0, description="Comparison graph weights b~ = scale * b")
    f_const: float = Field(0.0, description="Constant f in the Harnack hypothesis Hu >= f u^{p-1}")
    kernel: str = "ineq2"
    point: Optional[list[float]] = Field(None, description="Single (a, t) point for pointwise inequality checks")
    constant: Optional[float] = Field(None, gt=0, description="Constant C for the ineq1 kernel")
    check: Optional[str] = None
    samples: int = Field(100, gt=0)
    out: Optional[Path] = None
    format: Literal["json", "csv"] = "json"

    @field_validator("command")
    @classmethod
    def known_command(cls, value: str) -> str:
        if value not in COMMANDS:
            raise ValueError(f"unknown subcommand {value!r}")
        return value

    @field_validator("kernel")
    @classmethod
    def known_kernel(cls, value: str) -> str:
        if value not in INEQ_KERNELS:
            raise ValueError(f"unknown kernel {value!r}")
        return value

    @field_validator("point")
    @classmethod
    def two_coordinates(cls, value: Optional[list[float]]) -> Optional[list[float]]:
        if value is not None and len(value) != 2:
            raise ValueError("point needs exactly two coordinates")
        return value

    @field_validator("radii")
    @classmethod
    def positive_radii(cls, value: Optional[list[int]]) -> Optional[list[int]]:
        if value is not None and (not value or min(value) < 1):
            raise ValueError("radii must be a nonempty list of positive integers")
        return value

    @model_validator(mode="after")
    def check_sources(self) -> "RunConfig":
        sources = int(self.graph is not None) + int(self.model is not None)
        if self.command in GRAPHLESS:
            if sources:
                raise ValueError(f"{self.command} takes no graph source")
        elif sources != 1:
            raise ValueError("exactly one of --graph or --model is required")
        if self.command in MODEL_ONLY and self.model is None:
            raise ValueError(f"{self.command} requires --model")
        if self.model == "weighted_line":
            if not self.weights:
                raise ValueError("weighted_line requires --weights")
        elif self.model is not None and self.radius is None and self.command not in MODEL_ONLY:
            raise ValueError("--model requires --radius")
        if self.u == "file" and self.u_file is None:
            raise ValueError("--u file requires --u-file")
        if self.phi == "file" and self.phi_file is None:
            raise ValueError("--phi file requires --phi-file")
        if self.check is not None and self.check not in CHECKS.get(self.command, ()):
            raise ValueError(f"--check {self.check} is not available for {self.command}")
        if self.command == "ineq-scan":
            # kernels check their own range; ptriangle and ineq5 accept any p >= 0
            if self.p < 0:
                raise ValueError(f"ineq-scan requires p >= 0, got {self.p}")
        elif self.command in P_AT_LEAST_ONE:
            if self.p < 1:
                raise ValueError(f"{self.command} requires p >= 1, got {self.p}")
        elif self.p <= 1:
            raise ValueError(f"{self.command} requires p > 1, got {self.p}")
        return self
