"""Domain layer - value types for graphs, graph functions and reports.

This package contains:
- Graph: WeightedGraph windows, PExponent and the array aliases for
  graph functions and vertex subsets
- Reports: pydantic models returned by the library and emitted by the CLI
- Config: the validated RunConfig for one CLI invocation
"""

from pgraph.domain.model.config import COMMANDS, RunConfig
from pgraph.domain.model.graph import (
    Edge,
    GraphFunction,
    Label,
    PExponent,
    VertexSubset,
    WeightedGraph,
    require_exponent,
)
from pgraph.domain.model.reports import (
    CapacityOptions,
    CapacityResult,
    CorollaryBoundsReport,
    CriticalityVerdict,
    DisplayCheckReport,
    EnergyReport,
    GridCheck,
    GridPoint,
    GridSpec,
    GroundStateTrend,
    GsrReport,
    HardyWitness,
    HarmonicityClass,
    HarmonicityKind,
    HarnackResult,
    HarnackVerification,
    Ineq1Result,
    InequalityCheck,
    InequalityPoint,
    LiouvilleVerdict,
    NullSequenceEvidence,
    NullSequenceStep,
    PositivityReport,
    ProperSubsetReport,
    ScanResult,
    TransferReport,
)

__all__ = [
    "COMMANDS",
    "RunConfig",
    "Edge",
    "GraphFunction",
    "Label",
    "PExponent",
    "VertexSubset",
    "WeightedGraph",
    "require_exponent",
    "CapacityOptions",
    "CapacityResult",
    "CorollaryBoundsReport",
    "CriticalityVerdict",
    "DisplayCheckReport",
    "EnergyReport",
    "GridCheck",
    "GridPoint",
    "GridSpec",
    "GroundStateTrend",
    "GsrReport",
    "HardyWitness",
    "HarmonicityClass",
    "HarmonicityKind",
    "HarnackResult",
    "HarnackVerification",
    "Ineq1Result",
    "InequalityCheck",
    "InequalityPoint",
    "LiouvilleVerdict",
    "NullSequenceEvidence",
    "NullSequenceStep",
    "PositivityReport",
    "ProperSubsetReport",
    "ScanResult",
    "TransferReport",
]
