"""Consequences of criticality checked on exhaustions: proper subsets, Liouville comparison and
the transfer of criticality to the simplified energy h_{u,1}."""

from typing import Callable, Optional, Sequence

import numpy as np
from scipy import sparse

from common.logging import get_logger
from pgraph.criticality.capacity import capacity
from pgraph.criticality.hardy import hardy_witness
from pgraph.criticality.null_sequence import (
    NEGATIVE_TOL,
    Exhaustion,
    TransformedExhaustion,
    UFunction,
    criticality_verdict,
    ground_state_trend,
    is_monotone,
    null_sequence_search,
    shows_critical_trend,
)
from pgraph.domain.model.graph import Label, VertexSubset, WeightedGraph, require_exponent
from pgraph.domain.model.reports import (
    CapacityOptions,
    HarmonicityKind,
    LiouvilleVerdict,
    ProperSubsetReport,
    TransferReport,
)
from pgraph.energy import energy
from pgraph.exceptions import HypothesisError
from pgraph.graph import as_subset, boundary, is_connected
from pgraph.operators import classify

logger = get_logger(__name__)

CAPACITY_FLOOR = 1e-6
COMPARISON_TOL = 1e-12

SubsetFunction = Callable[[WeightedGraph], VertexSubset]


def _boundary_adjacent_vertex(g: WeightedGraph, mask: VertexSubset) -> int:
    touching = mask & boundary(g, ~mask)
    return int(np.flatnonzero(touching)[0])


def proper_subset_check(
    model: Exhaustion,
    p: float,
    radii: Sequence[int],
    subset: SubsetFunction,
    u: UFunction,
    vertex: Optional[Label] = None,
    opts: Optional[CapacityOptions] = None,
) -> ProperSubsetReport:
    """Capacity at a vertex of V next to its complement stays above a positive floor.

    A positive superharmonic u on a proper connected V makes h subcritical in V,
    so cap(x, V) is bounded away from 0 for every x in V.

    Args:
        model: exhaustion providing the windows
        p: exponent, p > 1
        radii: window radii
        subset: builds V on each window
        u: builds the witness on each window
        vertex: pinned vertex label; defaults to the first vertex of V (in id
            order) adjacent to the complement of V on the smallest window

    Raises:
        HypothesisError: if V is not a proper connected subset of the interior or
            u is not a positive superharmonic function on V
    """
    exponent = require_exponent(p)
    ordered = sorted(set(radii))
    capacities = []
    for radius in ordered:
        g = model.window(radius)
        mask = as_subset(g, subset(g))
        if mask.all():
            raise HypothesisError("V must be a proper subset of the window")
        if not mask.any() or not is_connected(g, mask):
            raise HypothesisError("V must be nonempty and connected")
        if np.any(mask & ~g.interior):
            raise HypothesisError("V must lie in the interior of the window")
        values = g.function(u(g))
        if np.any(values[mask | boundary(g, mask)] <= 0):
            raise HypothesisError("u must be strictly positive on V and its boundary")
        harmonicity = classify(g, values, mask, exponent)
        if not harmonicity.is_superharmonic:
            raise HypothesisError(f"u is {harmonicity.kind.value} on V, not superharmonic")

        if vertex is None:
            vertex = g.labels[_boundary_adjacent_vertex(g, mask)]
        result = capacity(g, g.index_of(vertex), mask, exponent, opts)
        capacities.append(result.value)

    floor = min(capacities)
    logger.info("Proper subset capacities", extra={"radii": ordered, "capacities": capacities})
    return ProperSubsetReport(
        radii=ordered,
        capacities=capacities,
        vertex=vertex,
        floor=floor,
        holds=floor > CAPACITY_FLOOR,
    )


def _union_edges(g: WeightedGraph, g_t: WeightedGraph) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Edges of either graph as (x, y, b, b_t) with x < y."""
    pattern = sparse.triu(abs(g.weights) + abs(g_t.weights), k=1).tocoo()
    x, y = pattern.row, pattern.col
    b = np.asarray(g.weights[x, y]).ravel()
    b_t = np.asarray(g_t.weights[x, y]).ravel()
    return x, y, b, b_t


def _dominates(lhs: np.ndarray, rhs: np.ndarray) -> bool:
    return bool(np.all(lhs >= rhs - COMPARISON_TOL * (1.0 + np.abs(rhs))))


def _transported_energy(g_t: WeightedGraph, u_t: np.ndarray, u: np.ndarray, e_n: np.ndarray, p: float) -> float:
    ratio = np.divide(e_n, u, out=np.zeros_like(e_n), where=u != 0)
    return energy(g_t, u_t * ratio, p).total


def liouville_check(
    model: Exhaustion,
    model_t: Exhaustion,
    u: UFunction,
    u_t: UFunction,
    alpha: float,
    beta: float,
    p: float,
    radii: Sequence[int],
    root: Optional[Label] = None,
    opts: Optional[CapacityOptions] = None,
) -> LiouvilleVerdict:
    """Check the comparison hypotheses between h and h~, then transport the null sequence of h.

    Hypotheses, evaluated on the largest window:
        a: h shows a critical trend and e_n approaches the ground state u
        b: u~ is positive and H~-subharmonic, and a positive H~-superharmonic
           function exists (u~ itself, or h~ >= 0 at the root)
        c: b^{2/p} u(x)u(y) >= alpha b~^{2/p} u~(x)u~(y) on every edge
        d: b^{1/p}|grad u| >= beta b~^{1/p}|grad u~| for p >= 2, reversed for p < 2

    When they hold, psi_n = u~ e_n / u must have energies under h~ with a
    critical trend.
    """
    exponent = require_exponent(p)
    if alpha <= 0 or beta <= 0:
        raise ValueError("alpha and beta must be positive")
    root = model.root if root is None else root
    ordered = sorted(set(radii))
    g, g_t = model.window(ordered[-1]), model_t.window(ordered[-1])
    if g.labels != g_t.labels:
        raise HypothesisError("both functionals must live on the same vertex set")
    values, values_t = g.function(u(g)), g_t.function(u_t(g_t))

    evidence = null_sequence_search(model, root, 1.0, exponent, ordered, opts)
    labelled = dict(zip(g.labels, values))
    try:
        trend = ground_state_trend(evidence, lambda label: float(labelled[label]))
        approaches = is_monotone(trend.deviations)
    except HypothesisError:
        approaches = False
    hypotheses = {"a": shows_critical_trend(evidence.radii, evidence.energies) and approaches}

    sub = classify(g_t, values_t, g_t.interior, exponent)
    positive = bool(np.all(values_t > 0))
    if positive and sub.kind == HarmonicityKind.HARMONIC:
        super_exists = True
    else:
        probe = capacity(g_t, g_t.index_of(root), g_t.interior, exponent, opts)
        super_exists = probe.status != "unbounded" and probe.value >= -NEGATIVE_TOL
    hypotheses["b"] = positive and sub.is_subharmonic and super_exists

    x, y, b, b_t = _union_edges(g, g_t)
    hypotheses["c"] = _dominates(
        b ** (2 / exponent) * values[x] * values[y],
        alpha * b_t ** (2 / exponent) * values_t[x] * values_t[y],
    )
    gradient = b ** (1 / exponent) * np.abs(values[x] - values[y])
    gradient_t = beta * b_t ** (1 / exponent) * np.abs(values_t[x] - values_t[y])
    hypotheses["d"] = _dominates(gradient, gradient_t) if exponent >= 2 else _dominates(gradient_t, gradient)

    transported = []
    for step in evidence.steps:
        window, window_t = model.window(step.radius), model_t.window(step.radius)
        e_n = window.function([dict(zip(step.labels, step.values))[label] for label in window.labels])
        transported.append(
            _transported_energy(window_t, window_t.function(u_t(window_t)), window.function(u(window)), e_n, exponent)
        )

    failing = [name for name, holds in hypotheses.items() if not holds]
    if failing:
        status = "hypotheses_not_met"
        logger.warning("Comparison hypotheses not met", extra={"failing": failing})
    elif shows_critical_trend(ordered, transported):
        status = "critical"
    else:
        status = "inconclusive"
    return LiouvilleVerdict(
        status=status,
        failing=failing,
        hypotheses=hypotheses,
        transported_energies=transported,
        radii=ordered,
    )


def simplified_weights(g: WeightedGraph, u: np.ndarray, p: float) -> WeightedGraph:
    """Graph b_u(x, y) = b(x, y)(u(x)u(y))^{p/2} with zero potential, whose pure energy is h_{u,1}."""
    u = g.function(u)
    b_u = g.edge_b * (u[g.edge_x] * u[g.edge_y]) ** (p / 2)
    return g.replace(edge_weights=b_u, potential=np.zeros(g.vertex_count))


def gsr_criticality_transfer(
    model: Exhaustion,
    u: UFunction,
    p: float,
    radii: Sequence[int],
    root: Optional[Label] = None,
    opts: Optional[CapacityOptions] = None,
) -> TransferReport:
    """Compare the criticality trend of h with that of h_{u,1}.

    For p >= 2 and harmonic u, criticality of h carries over to h_{u,1} with
    ground state 1. For 1 < p < 2 and positive superharmonic u, criticality of
    h_{u,1} carries over to h - <u^{1-p}Hu, |.|^p>.

    Raises:
        HypothesisError: if u is not strictly positive on the largest window, not
            harmonic (p >= 2) or not superharmonic (p < 2)
    """
    exponent = require_exponent(p)
    root = model.root if root is None else root
    ordered = sorted(set(radii))
    g = model.window(ordered[-1])
    values = g.function(u(g))
    if np.any(values <= 0):
        raise HypothesisError("u must be strictly positive on the window")
    harmonicity = classify(g, values, g.interior, exponent)
    if exponent >= 2 and harmonicity.kind != HarmonicityKind.HARMONIC:
        raise HypothesisError(f"u is {harmonicity.kind.value}, not harmonic")
    if exponent < 2 and not harmonicity.is_superharmonic:
        raise HypothesisError(f"u is {harmonicity.kind.value}, not superharmonic")

    def verdict(exhaustion: Exhaustion):
        return criticality_verdict(null_sequence_search(exhaustion, root, 1.0, exponent, ordered, opts))

    base = verdict(model)
    simplified = TransformedExhaustion(model, lambda window: simplified_weights(window, u(window), exponent))
    transferred = verdict(simplified)

    shifted = None
    ground_state_one = None
    if exponent >= 2:
        evidence = transferred.evidence
        ground_state_one = ground_state_trend(evidence, lambda label: 1.0)
        transfers = base.classification != "critical_trend" or transferred.classification == "critical_trend"
    else:

        def shift(window: WeightedGraph) -> WeightedGraph:
            weights = np.asarray(hardy_witness(window, u(window), window.interior, exponent, samples=0).weights)
            return window.replace(potential=window.potential - weights * window.measure)

        shifted = verdict(TransformedExhaustion(model, shift))
        transfers = transferred.classification != "critical_trend" or shifted.classification == "critical_trend"

    logger.info(
        "Criticality transfer",
        extra={
            "p": exponent,
            "base": base.classification,
            "transferred": transferred.classification,
            "shifted": shifted.classification if shifted else None,
        },
    )
    return TransferReport(
        p=exponent,
        base=base,
        transferred=transferred,
        shifted=shifted,
        ground_state_one=ground_state_one,
        transfers=transfers,
    )
