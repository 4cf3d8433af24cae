"""Hardy weights from positive superharmonic functions."""

from typing import Optional

import numpy as np

from common.logging import get_logger
from pgraph.domain.model.graph import GraphFunction, VertexSubset, WeightedGraph, require_exponent
from pgraph.domain.model.reports import HardyWitness
from pgraph.exceptions import HypothesisError
from pgraph.graph import as_subset, boundary
from pgraph.operators import classify, schroedinger_on

logger = get_logger(__name__)


def require_positive_witness(g: WeightedGraph, u: GraphFunction, mask: VertexSubset) -> GraphFunction:
    """u > 0 on V and u >= 0 on its boundary (a Dirichlet zero there is allowed)."""
    u = g.function(u)
    if np.any(u[mask] <= 0):
        bad = int(np.flatnonzero(mask & (u <= 0))[0])
        raise HypothesisError(f"u({g.labels[bad]!r}) = {u[bad]} is not strictly positive on V")
    if np.any(u[boundary(g, mask)] < 0):
        raise HypothesisError("u is negative on the boundary of V")
    return u


def hardy_battery(
    g: WeightedGraph,
    weights: GraphFunction,
    V: VertexSubset,
    p: float,
    samples: int,
    seed: int = 0,
) -> Optional[float]:
    """min over random phi in C_c(V) of h(phi) - sum w |phi|^p m, each scaled by 1 + h(phi)."""
    if samples <= 0:
        return None
    mask = as_subset(g, V)
    rng = np.random.default_rng(seed)
    phis = np.where(mask, rng.uniform(-1.0, 1.0, (samples, g.vertex_count)), 0.0)
    gradient_part = np.abs(phis[:, g.edge_x] - phis[:, g.edge_y]) ** p @ g.edge_b
    powered = np.abs(phis) ** p
    h = gradient_part + powered @ g.potential
    hardy = powered @ (weights * g.measure)
    return float(np.min((h - hardy) / (1.0 + np.abs(h))))


def hardy_witness(
    g: WeightedGraph,
    u: GraphFunction,
    V: Optional[VertexSubset] = None,
    p: float = 2.0,
    samples: int = 1000,
    seed: int = 0,
    tol: float = 1e-10,
) -> HardyWitness:
    """Hardy weight w = Hu / u^{p-1} on V (0 elsewhere) with a random test battery.

    h(phi) >= sum_V w |phi|^p m holds for every phi supported in V when u is
    positive and superharmonic; the battery checks it on seeded random phi.

    Raises:
        HypothesisError: if u is not strictly positive on V or not superharmonic on V
    """
    exponent = require_exponent(p)
    mask = as_subset(g, g.interior if V is None else V)
    u = require_positive_witness(g, u, mask)
    harmonicity = classify(g, u, mask, exponent)
    if not harmonicity.is_superharmonic:
        raise HypothesisError(f"u is {harmonicity.kind.value} on V, not superharmonic")

    values = schroedinger_on(g, u, exponent, mask)
    weights = np.zeros(g.vertex_count)
    weights[mask] = values[mask] / u[mask] ** (exponent - 1)

    min_slack = hardy_battery(g, weights, mask, exponent, samples, seed)
    verified = bool(min_slack is None or min_slack >= -tol)
    if not verified:
        logger.warning("Hardy battery found a violation", extra={"min_slack": min_slack, "p": exponent})
    return HardyWitness(
        weights=weights.tolist(),
        verified=verified,
        min_slack=min_slack,
        samples=max(samples, 0),
        strictly_positive=bool(np.all(weights[mask] > 0)) if mask.any() else False,
    )
