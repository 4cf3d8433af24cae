"""Null sequences over exhaustions and the criticality verdict built on them.

For each radius the capacity minimizer at the root, scaled to alpha, is the
null-sequence candidate e_n, with h(e_n) = alpha^p cap. A finite computation
can only exhibit a trend: energies must be non-increasing across radii and
either drop below DECAY_RATIO times the first energy or decay with a fitted
log-log slope of at most SLOPE_THRESHOLD.
"""

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Optional, Protocol, Sequence

import numpy as np

from common.environments import get_thread_count
from common.logging import get_logger
from pgraph.domain.model.graph import GraphFunction, Label, WeightedGraph, require_exponent
from pgraph.domain.model.reports import (
    CapacityOptions,
    CriticalityVerdict,
    GroundStateTrend,
    HardyWitness,
    NullSequenceEvidence,
    NullSequenceStep,
)
from pgraph.criticality.capacity import capacity
from pgraph.criticality.hardy import hardy_witness
from pgraph.exceptions import HypothesisError

logger = get_logger(__name__)

DECAY_RATIO = 1e-3
SLOPE_THRESHOLD = -0.25
MONOTONE_TOL = 1e-9
NEGATIVE_TOL = 1e-10

UFunction = Callable[[WeightedGraph], GraphFunction]


class Exhaustion(Protocol):
    """Anything that builds nested windows by radius around a fixed root."""

    @property
    def root(self) -> Label: ...

    def window(self, radius: int) -> WeightedGraph: ...


class TransformedExhaustion:
    """Windows of a base exhaustion passed through a graph transform."""

    def __init__(self, base: Exhaustion, transform: Callable[[WeightedGraph], WeightedGraph]):
        self.base = base
        self.transform = transform

    @property
    def root(self) -> Label:
        return self.base.root

    def window(self, radius: int) -> WeightedGraph:
        return self.transform(self.base.window(radius))


def is_monotone(values: Sequence[float]) -> bool:
    """Non-increasing up to a relative tolerance."""
    return all(b <= a + MONOTONE_TOL * (1 + abs(a)) for a, b in zip(values, values[1:]))


def loglog_slope(radii: Sequence[int], values: Sequence[float]) -> Optional[float]:
    if len(values) < 2 or min(values) <= 0 or len(set(radii)) < 2:
        return None
    slope, _ = np.polyfit(np.log(radii), np.log(values), 1)
    return float(slope)


def shows_critical_trend(radii: Sequence[int], values: Sequence[float]) -> bool:
    if len(values) < 2 or values[0] <= 0 or not is_monotone(values):
        return False
    slope = loglog_slope(radii, values)
    return values[-1] < DECAY_RATIO * values[0] or (slope is not None and slope <= SLOPE_THRESHOLD)


def null_sequence_search(
    model: Exhaustion,
    root: Label,
    alpha: float,
    p: float,
    radii: Sequence[int],
    opts: Optional[CapacityOptions] = None,
) -> NullSequenceEvidence:
    """Capacity minimizers at root, scaled to alpha, over windows of increasing radius.

    Radii are deduplicated, solved in a thread pool and reported in ascending order.
    """
    exponent = require_exponent(p)
    if alpha <= 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    ordered = sorted(set(radii))
    opts = opts or CapacityOptions()

    def solve(radius: int) -> NullSequenceStep:
        g = model.window(radius)
        result = capacity(g, g.index_of(root), g.interior, exponent, opts)
        return NullSequenceStep(
            radius=radius,
            capacity=result.value,
            energy=alpha**exponent * result.value,
            labels=result.labels,
            values=[alpha * v for v in result.minimizer],
            status=result.status,
        )

    threads = min(get_thread_count(), len(ordered))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            steps = list(executor.map(solve, ordered))
    else:
        steps = [solve(radius) for radius in ordered]

    energies = [step.energy for step in steps]
    evidence = NullSequenceEvidence(
        root=root,
        alpha=alpha,
        p=exponent,
        steps=steps,
        monotone=is_monotone(energies),
        slope=loglog_slope(ordered, energies),
    )
    logger.info(
        "Null sequence search finished",
        extra={"radii": ordered, "energies": energies, "slope": evidence.slope},
    )
    return evidence


def ground_state_trend(
    evidence: NullSequenceEvidence, u: Callable[[Label], float], core: Optional[Sequence[Label]] = None
) -> GroundStateTrend:
    """max over a fixed core of |e_n - (alpha / u(o)) u| for every radius.

    The core defaults to the labels of the smallest window.

    Raises:
        HypothesisError: if u is not strictly positive on the core or at the root
    """
    if not evidence.steps:
        raise ValueError("evidence has no steps")
    core = list(core) if core is not None else list(evidence.steps[0].labels)
    root_value = u(evidence.root)
    if root_value <= 0 or any(u(label) <= 0 for label in core):
        raise HypothesisError("u must be strictly positive on the core")
    scale = evidence.alpha / root_value

    deviations = []
    for step in evidence.steps:
        values = dict(zip(step.labels, step.values))
        deviations.append(max(abs(values.get(label, 0.0) - scale * u(label)) for label in core))
    return GroundStateTrend(radii=evidence.radii, deviations=deviations, limit_scale=scale, core=core)


def criticality_verdict(evidence: NullSequenceEvidence, witness: Optional[HardyWitness] = None) -> CriticalityVerdict:
    """Classify null-sequence evidence, optionally backed by a Hardy witness."""
    energies = evidence.energies
    last = evidence.steps[-1] if evidence.steps else None
    ground_state = None
    if last is not None:
        root_value = dict(zip(last.labels, last.values)).get(evidence.root, 0.0)
        if root_value:
            ground_state = [v / root_value for v in last.values]

    if any(step.status == "unbounded" or step.energy < -NEGATIVE_TOL for step in evidence.steps):
        classification, reason = "supercritical", "h takes negative values on C_c(V)"
    elif witness is not None and witness.verified and witness.strictly_positive and witness.samples > 0:
        classification, reason = "subcritical_witness", "strictly positive Hardy weight verified on the battery"
    elif shows_critical_trend(evidence.radii, energies):
        classification, reason = "critical_trend", "null-sequence energies decay monotonically"
    else:
        classification, reason = "inconclusive", "no witness found and no decaying trend"
    return CriticalityVerdict(
        classification=classification,
        evidence=evidence,
        hardy_weight=witness.weights if witness is not None else None,
        ground_state=ground_state,
        reason=reason,
    )


def assess_criticality(
    model: Exhaustion,
    root: Label,
    p: float,
    radii: Sequence[int],
    u: Optional[UFunction] = None,
    alpha: float = 1.0,
    samples: int = 1000,
    seed: int = 0,
    opts: Optional[CapacityOptions] = None,
) -> CriticalityVerdict:
    """Null-sequence search plus, when u is given, a Hardy witness on the largest window."""
    evidence = null_sequence_search(model, root, alpha, p, radii, opts)
    witness = None
    if u is not None:
        g = model.window(max(radii))
        try:
            witness = hardy_witness(g, u(g), g.interior, p, samples=samples, seed=seed)
        except HypothesisError as e:
            logger.info("No Hardy witness", extra={"reason": str(e)})
    return criticality_verdict(evidence, witness)
