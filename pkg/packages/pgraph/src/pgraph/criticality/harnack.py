"""Local Harnack constants for nonnegative supersolutions on finite connected sets.

A supersolution u of Hu >= f u^{p-1} on K satisfies, for adjacent x, y in K,

    u(y) <= F(x -> y) u(x),  F(x -> y) = (d_f(x) / b(x, y))^{1/(p-1)} + 1,

with d_f = deg + c - f m >= 0. Chaining along paths inside K, the best bound
for u(t)/u(s) is the minimal factor product over paths s -> t, found by
Dijkstra on log F (all weights are >= 0). Ties between equal-cost paths go to
the lexicographically smallest vertex sequence.
"""

from heapq import heappop, heappush
from typing import Union

import numpy as np

from common.logging import get_logger
from pgraph.domain.model.graph import GraphFunction, VertexSubset, WeightedGraph, require_exponent
from pgraph.domain.model.reports import HarnackResult, HarnackVerification, PositivityReport
from pgraph.exceptions import HypothesisError, NonNegativityError
from pgraph.graph import as_subset, boundary, is_connected
from pgraph.operators import classify, default_tolerance, schroedinger_on

logger = get_logger(__name__)

D_F_TOLERANCE = 1e-12


def _as_function(g: WeightedGraph, f: Union[float, GraphFunction]) -> GraphFunction:
    if np.isscalar(f):
        return np.full(g.vertex_count, float(f))  # type: ignore[arg-type]
    return g.function(f)  # type: ignore[arg-type]


def _require_connected(g: WeightedGraph, mask: VertexSubset) -> None:
    if not mask.any():
        raise HypothesisError("K is empty")
    if not is_connected(g, mask):
        raise HypothesisError("K is not connected")


def _min_path_products(
    members: list[int], adjacency: dict[int, list[tuple[float, int]]], source: int
) -> dict[int, float]:
    """Dijkstra from source over log-factor weights; returns exp(cost) per reached vertex."""
    queue: list[tuple[float, tuple[int, ...]]] = [(0.0, (source,))]
    settled: dict[int, float] = {}
    best: dict[int, float] = {source: 0.0}
    while queue:
        cost, path = heappop(queue)
        vertex = path[-1]
        if vertex in settled:
            continue
        settled[vertex] = cost
        for weight, neighbour in adjacency.get(vertex, ()):
            if neighbour in settled:
                continue
            candidate = cost + weight
            previous = best.get(neighbour)
            if previous is None or candidate <= previous:
                best[neighbour] = candidate
                heappush(queue, (candidate, path + (neighbour,)))
    return {vertex: float(np.exp(cost)) for vertex, cost in settled.items()}


def harnack_constant(
    g: WeightedGraph, K: VertexSubset, f: Union[float, GraphFunction], p: float, with_pairs: bool = True
) -> HarnackResult:
    """C_{K,H,f} = max over ordered pairs (s, t) in K of the minimal path product from s to t.

    Raises:
        HypothesisError: if K is empty or disconnected, or d_f < 0 somewhere on K
    """
    exponent = require_exponent(p)
    mask = as_subset(g, K)
    _require_connected(g, mask)
    f = _as_function(g, f)

    d_f = g.degrees + g.potential - f * g.measure
    members = np.flatnonzero(mask).tolist()
    if np.any(d_f[members] < -D_F_TOLERANCE):
        bad = members[int(np.argmin(d_f[members]))]
        raise HypothesisError(f"deg + c - f m = {d_f[bad]} < 0 at {g.labels[bad]!r}")
    d_f = np.maximum(d_f, 0.0)

    adjacency: dict[int, list[tuple[float, int]]] = {}
    for x in members:
        ids, weights = g.neighbors(x)
        inside = mask[ids]
        factors = (d_f[x] / weights[inside]) ** (1.0 / (exponent - 1)) + 1.0
        adjacency[x] = [(float(np.log(F)), int(y)) for F, y in zip(factors, ids[inside])]

    pairs = np.ones((len(members), len(members)))
    position = {x: k for k, x in enumerate(members)}
    for s in members:
        for t, product in _min_path_products(members, adjacency, s).items():
            pairs[position[s], position[t]] = product
    constant = max(1.0, float(pairs.max()))
    logger.debug("Harnack constant", extra={"size": len(members), "constant": constant})
    return HarnackResult(
        constant=constant,
        pair_bounds=pairs.tolist() if with_pairs else None,
        d_f=d_f[members].tolist(),
        vertices=[g.labels[x] for x in members],
    )


def harnack_verify(
    g: WeightedGraph, K: VertexSubset, f: Union[float, GraphFunction], u: GraphFunction, p: float
) -> HarnackVerification:
    """Check max_K u <= C min_K u, or zero propagation when u vanishes somewhere on K.

    Raises:
        NonNegativityError: if u < 0 on K or its boundary
        HypothesisError: if Hu >= f u^{p-1} fails on K
    """
    exponent = require_exponent(p)
    mask = as_subset(g, K)
    u = g.function(u)
    f = _as_function(g, f)
    closure = mask | boundary(g, mask)
    if np.any(u[closure] < 0):
        raise NonNegativityError("u must be nonnegative on K and its boundary")

    tol = default_tolerance(g, u, exponent)
    residual = schroedinger_on(g, u, exponent, mask)[mask] - (f * u ** (exponent - 1))[mask]
    if np.any(residual < -tol):
        raise HypothesisError("u is not a supersolution of Hu >= f u^{p-1} on K")

    result = harnack_constant(g, mask, f, exponent, with_pairs=False)
    on_k = u[mask]
    if np.min(on_k) <= 0:
        vanishes = bool(np.all(u[closure] == 0))
        return HarnackVerification(holds=vanishes, ratio=None, constant=result.constant, zero_propagation=vanishes)
    ratio = float(np.max(on_k) / np.min(on_k))
    return HarnackVerification(holds=ratio <= result.constant * (1 + 1e-12), ratio=ratio, constant=result.constant)


def strict_positivity_check(g: WeightedGraph, V: VertexSubset, u: GraphFunction, p: float) -> PositivityReport:
    """A nonnegative, nonzero superharmonic u on a connected V is strictly positive on V.

    Raises:
        HypothesisError: if V is disconnected, u is negative or identically zero on
            V and its boundary, or u is not superharmonic on V
    """
    exponent = require_exponent(p)
    mask = as_subset(g, V)
    _require_connected(g, mask)
    u = g.function(u)
    closure = mask | boundary(g, mask)
    if np.any(u[closure] < 0) or not np.any(u[closure] != 0):
        raise HypothesisError("u must be nonnegative and nonzero on V and its boundary")
    if not classify(g, u, mask, exponent).is_superharmonic:
        raise HypothesisError("u is not superharmonic on V")
    low = float(np.min(u[mask]))
    return PositivityReport(strictly_positive=low > 0, min_value=low)
