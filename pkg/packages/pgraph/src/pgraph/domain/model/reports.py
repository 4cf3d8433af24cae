"""Report models returned by the library and serialized by the CLI.

All reports are pydantic models so that they serialize to JSON the same way
everywhere. Per-vertex data is carried as plain lists of floats.
"""

from enum import Enum
from typing import Literal, Optional, Union

from pydantic import BaseModel, Field, model_validator

Label = Union[int, str]


class HarmonicityKind(str, Enum):
    HARMONIC = "harmonic"
    SUPERHARMONIC = "superharmonic"
    SUBHARMONIC = "subharmonic"
    NEITHER = "neither"


class HarmonicityClass(BaseModel):
    """Sign class of Hu on a vertex set."""

    kind: HarmonicityKind
    tol: float = Field(..., ge=0, description="Zero tolerance used for the sign test")
    min_value: float = Field(..., description="min Hu on the set")
    max_value: float = Field(..., description="max Hu on the set")

    @property
    def is_superharmonic(self) -> bool:
        """Hu >= 0 up to tol (harmonic functions included)."""
        return self.kind in (HarmonicityKind.HARMONIC, HarmonicityKind.SUPERHARMONIC)

    @property
    def is_subharmonic(self) -> bool:
        """Hu <= 0 up to tol (harmonic functions included)."""
        return self.kind in (HarmonicityKind.HARMONIC, HarmonicityKind.SUBHARMONIC)


class EnergyReport(BaseModel):
    """Value of an energy functional with its breakdown."""

    total: float
    gradient_part: float = Field(..., description="Edge-once sum of b|grad f|^p")
    potential_part: float = Field(..., description="Sum of c|f|^p")
    edge_terms: Optional[list[float]] = Field(None, description="Per-edge terms, edges() order")

    @model_validator(mode="after")
    def check_total(self) -> "EnergyReport":
        scale = 1.0 + abs(self.gradient_part) + abs(self.potential_part)
        if abs(self.total - (self.gradient_part + self.potential_part)) > 1e-12 * scale:
            raise ValueError("total must equal gradient_part + potential_part")
        return self


class GsrReport(BaseModel):
    """Both sides of the ground state representation."""

    lhs: float = Field(..., description="h(u phi) - <Hu, u|phi|^p>")
    rhs: float = Field(..., description="h_u(phi)")
    ratio: Optional[float] = Field(None, description="lhs / rhs when rhs > 0")
    degenerate: bool = Field(False, description="Both sides vanish")


class CorollaryBoundsReport(BaseModel):
    """Comparison of the ground-state left-hand side with h_{u,1} (and h_{u,2})."""

    p: float
    lhs: float
    h_u1: float
    h_u2: Optional[float] = None
    lower_constant: Optional[float] = Field(None, description="Constant in lhs >= c h_{u,1} (p >= 2)")
    upper_constant: Optional[float] = Field(None, description="Constant in lhs <= c h_{u,1} (p <= 2)")
    holds: bool
    slack: float = Field(..., description="Signed distance to the bound, >= 0 when it holds")
    sum_ratio: Optional[float] = Field(None, description="lhs / (h_{u,1} + h_{u,2}) for p >= 2")


class InequalityPoint(BaseModel):
    """Scalar arguments (a, t, p) of the fundamental inequalities."""

    a: float
    t: float = Field(..., ge=0, le=1)
    p: float = Field(..., gt=0)


class GridPoint(BaseModel):
    a: float
    t: float


class GridSpec(BaseModel):
    """Rectangular (a, t) grid; special points {0, t, 1} are added to every a-row."""

    a_min: float = -10.0
    a_max: float = 10.0
    a_step: float = Field(1e-2, gt=0)
    t_min: float = Field(0.0, ge=0, le=1)
    t_max: float = Field(1.0, ge=0, le=1)
    t_step: float = Field(1e-3, gt=0)
    special_points: bool = True


class ScanResult(BaseModel):
    """Extremes of lhs/rhs ratios over a grid."""

    kernel: str
    p: float
    inf_ratio: float
    sup_ratio: float
    argmin: GridPoint
    argmax: GridPoint
    grid: GridSpec
    evaluated: int = Field(..., description="Grid points entering the ratio statistics")
    excluded: int = Field(..., description="Degenerate both-zero points left out")
    extremals_on_conjectured_set: bool = Field(
        ...,
        description="argmin and argmax lie on t in {0,1} or a in {0,t,1}",
    )

    @model_validator(mode="after")
    def check_order(self) -> "ScanResult":
        if self.inf_ratio > self.sup_ratio:
            raise ValueError("inf_ratio must not exceed sup_ratio")
        return self


class Ineq1Result(BaseModel):
    upper_holds: bool
    lower_holds: bool


class GridCheck(BaseModel):
    """Outcome of checking a pointwise inequality on a whole grid."""

    holds: bool
    points: int
    worst_slack: float
    witness: Optional[list[float]] = Field(None, description="First violating point in grid order")


class InequalityCheck(BaseModel):
    holds: bool
    slack: float


class CapacityOptions(BaseModel):
    """Solver settings for the capacity minimization."""

    pin: float = Field(1.0, description="Value phi(x0) is pinned to")
    max_iter: int = Field(20000, gt=0)
    grad_tol: float = Field(1e-9, gt=0)
    rel_tol: float = Field(1e-12, gt=0)
    stall_window: int = Field(50, gt=0)
    restarts: int = Field(8, ge=0, description="Random restarts when c < 0 somewhere")
    seed: int = 0


class CapacityResult(BaseModel):
    """Best minimum of h over phi in C_c(V) with phi(x0) pinned."""

    value: float
    minimizer: list[float]
    labels: list[Label]
    pinned_vertex: Label
    certified_convex: bool = Field(..., description="c >= 0 on the window, so the optimum is global")
    status: Literal["certified", "upper_bound", "unbounded"]
    iterations: int
    gradient_norm: float = Field(..., description="Final sup-norm of the free gradient")


class NullSequenceStep(BaseModel):
    radius: int
    capacity: float
    energy: float = Field(..., description="h(e_n) = alpha^p cap")
    labels: list[Label]
    values: list[float] = Field(..., description="e_n on the window")
    status: Literal["certified", "upper_bound", "unbounded"] = "certified"


class NullSequenceEvidence(BaseModel):
    """Capacity minimizers scaled to alpha over an exhaustion."""

    root: Label
    alpha: float
    p: float
    steps: list[NullSequenceStep]
    monotone: bool = Field(..., description="Energies non-increasing across radii")
    slope: Optional[float] = Field(None, description="Fitted log-log slope of energy vs radius")

    @property
    def energies(self) -> list[float]:
        return [step.energy for step in self.steps]

    @property
    def radii(self) -> list[int]:
        return [step.radius for step in self.steps]


class HardyWitness(BaseModel):
    """Hardy weight w = Hu / u^{p-1} with its verification battery."""

    weights: list[float] = Field(..., description="w on V, 0 elsewhere")
    verified: bool
    min_slack: Optional[float] = Field(None, description="min of h(phi) - <w, |phi|^p> over samples")
    samples: int = 0
    strictly_positive: bool = Field(..., description="w > 0 on every vertex of V")


class CriticalityVerdict(BaseModel):
    classification: Literal["subcritical_witness", "critical_trend", "supercritical", "inconclusive"]
    evidence: NullSequenceEvidence
    hardy_weight: Optional[list[float]] = None
    ground_state: Optional[list[float]] = Field(
        None, description="e_n / e_n(o) on the largest window"
    )
    reason: str


class GroundStateTrend(BaseModel):
    """Distance of e_n to (alpha / u(o)) u on a fixed core."""

    radii: list[int]
    deviations: list[float]
    limit_scale: float = Field(..., description="alpha / u(o)")
    core: list[Label]


class HarnackResult(BaseModel):
    constant: float = Field(..., ge=1)
    pair_bounds: Optional[list[list[float]]] = Field(
        None, description="Row s, column t: min path product bounding u(t)/u(s)"
    )
    d_f: list[float] = Field(..., description="deg + c - f m on K, in K order")
    vertices: list[Label]


class HarnackVerification(BaseModel):
    holds: bool
    ratio: Optional[float] = Field(None, description="max_K u / min_K u")
    constant: float
    zero_propagation: Optional[bool] = Field(
        None, description="Set when u vanishes somewhere in K: u = 0 on K and its boundary"
    )


class PositivityReport(BaseModel):
    strictly_positive: bool
    min_value: float


class ProperSubsetReport(BaseModel):
    radii: list[int]
    capacities: list[float]
    vertex: Label
    floor: float
    holds: bool


class LiouvilleVerdict(BaseModel):
    status: Literal["critical", "hypotheses_not_met", "inconclusive"]
    failing: list[str] = Field(default_factory=list)
    hypotheses: dict[str, bool]
    transported_energies: list[float] = Field(default_factory=list)
    radii: list[int] = Field(default_factory=list)


class TransferReport(BaseModel):
    p: float
    base: CriticalityVerdict
    transferred: CriticalityVerdict = Field(..., description="Pure energy of b_u, i.e. h_{u,1}")
    shifted: Optional[CriticalityVerdict] = Field(
        None, description="h - <u^{1-p}Hu, |.|^p> (1 < p < 2)"
    )
    ground_state_one: Optional[GroundStateTrend] = None
    transfers: bool


class DisplayCheckReport(BaseModel):
    """Both sides of the ground state representation on the half-line, in closed form."""

    p: float
    radius: int
    lhs: float
    rhs: float
    ratio: Optional[float] = None
    degenerate: bool = False
    corollary_rhs: float
    corollary_constant: float
    corollary_holds: bool
