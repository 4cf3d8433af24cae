"""Graph-core utilities: degrees, boundaries and connectivity on windows."""

import numpy as np
from scipy.sparse import csgraph

from pgraph.domain.model.graph import VertexSubset, WeightedGraph
from pgraph.exceptions import GraphValidationError


def degree(g: WeightedGraph, x: int) -> float:
    """deg(x) = sum_y b(x, y)."""
    return float(g.degrees[g.check_vertex(x)])


def as_subset(g: WeightedGraph, V: VertexSubset) -> VertexSubset:
    """Validate a boolean mask against the vertex range of g."""
    mask = np.asarray(V, dtype=bool)
    if mask.shape != (g.vertex_count,):
        raise GraphValidationError("vertex subset needs one flag per vertex", mask.shape)
    return mask


def boundary(g: WeightedGraph, V: VertexSubset) -> VertexSubset:
    """Vertices outside V with a neighbour in V."""
    mask = as_subset(g, V)
    touched = np.asarray(g.weights @ mask.astype(np.float64)).ravel() > 0
    return touched & ~mask


def closure(g: WeightedGraph, V: VertexSubset) -> VertexSubset:
    """V together with its boundary."""
    mask = as_subset(g, V)
    return mask | boundary(g, mask)


def is_connected(g: WeightedGraph, V: VertexSubset) -> bool:
    """Whether V is connected through edges with both endpoints in V.

    The empty set counts as connected.
    """
    members = np.flatnonzero(as_subset(g, V))
    if members.size <= 1:
        return True
    inner = g.weights[members][:, members]
    count, _ = csgraph.connected_components(inner, directed=False)
    return bool(count == 1)
