"""Weighted graph windows, graph functions and vertex subsets.

A WeightedGraph is a finite window of a locally summable graph: symmetric
edge weights b, a strictly positive measure m, a potential c and an interior
V. Vertices are dense integers 0..n-1; external labels (ints or strings) are
kept alongside for files and the CLI.

Edges are stored once with x < y, sorted lexicographically, and as a
symmetric scipy CSR matrix whose rows list neighbours in ascending id order.
"""

import math
from typing import Iterable, Optional, Sequence, Union

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, Field
from scipy import sparse

from pgraph.exceptions import ExponentError, GraphValidationError, VertexOutOfRangeError

Label = Union[int, str]
GraphFunction = npt.NDArray[np.float64]
VertexSubset = npt.NDArray[np.bool_]
Edge = tuple[int, int, float]


class PExponent(BaseModel):
    """The exponent p of the p-Laplacian, with its conjugate q = p/(p-1)."""

    model_config = ConfigDict(frozen=True)

    value: float = Field(..., ge=1, description="Exponent p >= 1")

    @property
    def conjugate(self) -> float:
        if self.value == 1:
            return math.inf
        return self.value / (self.value - 1)


def require_exponent(
    p: Union[float, PExponent], *, strict: bool = True, at_least: Optional[float] = None
) -> float:
    """Validate p and return it as a float.

    Args:
        p: exponent value or PExponent
        strict: reject p = 1 (everything built on strict convexity needs p > 1)
        at_least: additional lower bound, e.g. 2 for functionals only defined for p >= 2

    Raises:
        ExponentError: if p is out of range
    """
    value = p.value if isinstance(p, PExponent) else float(p)
    if not math.isfinite(value) or value < 1:
        raise ExponentError(f"p must be a finite number >= 1, got {value}")
    if strict and value == 1:
        raise ExponentError("this operation requires p > 1")
    if at_least is not None and value < at_least:
        raise ExponentError(f"this operation requires p >= {at_least}, got {value}")
    return value


class WeightedGraph:
    """Immutable finite window of a weighted graph with measure and potential."""

    def __init__(
        self,
        vertex_count: int,
        edges: Iterable[Sequence[float]],
        measure: Optional[Sequence[float]] = None,
        potential: Optional[Sequence[float]] = None,
        interior: Optional[Iterable[int]] = None,
        labels: Optional[Sequence[Label]] = None,
    ):
        if vertex_count < 1:
            raise GraphValidationError("a graph needs at least one vertex", vertex_count)
        n = int(vertex_count)
        self._n = n

        seen: dict[tuple[int, int], float] = {}
        for record in edges:
            x, y, b = int(record[0]), int(record[1]), float(record[2])
            if not (0 <= x < n and 0 <= y < n):
                raise GraphValidationError("edge endpoint out of range", (x, y, b))
            if x == y:
                raise GraphValidationError("self-loop", (x, y, b))
            if not math.isfinite(b) or b < 0:
                raise GraphValidationError("negative or non-finite weight", (x, y, b))
            key = (min(x, y), max(x, y))
            if key in seen:
                if seen[key] != b:
                    raise GraphValidationError("asymmetric duplicate edge", (x, y, b))
                continue
            seen[key] = b

        kept = sorted((key, b) for key, b in seen.items() if b > 0)
        self.edge_x = np.array([k[0] for k, _ in kept], dtype=np.int64)
        self.edge_y = np.array([k[1] for k, _ in kept], dtype=np.int64)
        self.edge_b = np.array([b for _, b in kept], dtype=np.float64)

        rows = np.concatenate([self.edge_x, self.edge_y])
        cols = np.concatenate([self.edge_y, self.edge_x])
        vals = np.concatenate([self.edge_b, self.edge_b])
        weights = sparse.csr_matrix((vals, (rows, cols)), shape=(n, n))
        weights.sort_indices()
        self.weights: sparse.csr_matrix = weights

        self.measure = self._vertex_array(measure, 1.0, "measure")
        if np.any(self.measure <= 0):
            bad = int(np.flatnonzero(self.measure <= 0)[0])
            raise GraphValidationError("measure must be strictly positive", (bad, self.measure[bad]))
        self.potential = self._vertex_array(potential, 0.0, "potential")

        mask = np.ones(n, dtype=bool)
        if interior is not None:
            mask = np.zeros(n, dtype=bool)
            for x in interior:
                if not 0 <= int(x) < n:
                    raise GraphValidationError("interior vertex out of range", x)
                mask[int(x)] = True
        self.interior: VertexSubset = mask

        if labels is None:
            labels = list(range(n))
        if len(labels) != n:
            raise GraphValidationError("one label per vertex required", len(labels))
        self.labels: tuple[Label, ...] = tuple(labels)
        self._index = {label: i for i, label in enumerate(self.labels)}
        if len(self._index) != n:
            raise GraphValidationError("vertex labels must be unique")

        self.degrees = np.asarray(self.weights.sum(axis=1)).ravel()
        for array in (self.edge_x, self.edge_y, self.edge_b, self.measure, self.potential,
                      self.interior, self.degrees):
            array.setflags(write=False)

    def _vertex_array(self, values: Optional[Sequence[float]], fill: float, name: str) -> GraphFunction:
        if values is None:
            return np.full(self._n, fill, dtype=np.float64)
        array = np.array(values, dtype=np.float64)
        if array.shape != (self._n,):
            raise GraphValidationError(f"{name} needs one value per vertex", array.shape)
        if not np.all(np.isfinite(array)):
            raise GraphValidationError(f"{name} must be finite")
        return array

    @property
    def vertex_count(self) -> int:
        return self._n

    @property
    def edge_count(self) -> int:
        return int(self.edge_b.size)

    def edges(self) -> list[Edge]:
        """Undirected edges (x, y, b) with x < y in ascending order."""
        return [(int(x), int(y), float(b)) for x, y, b in zip(self.edge_x, self.edge_y, self.edge_b)]

    def check_vertex(self, x: int) -> int:
        if not 0 <= int(x) < self._n:
            raise VertexOutOfRangeError(f"vertex {x} outside 0..{self._n - 1}")
        return int(x)

    def weight(self, x: int, y: int) -> float:
        """b(x, y); symmetric, 0 for non-adjacent pairs."""
        return float(self.weights[self.check_vertex(x), self.check_vertex(y)])

    def neighbors(self, x: int) -> tuple[npt.NDArray[np.int64], GraphFunction]:
        """Neighbour ids in ascending order together with their weights."""
        x = self.check_vertex(x)
        start, stop = self.weights.indptr[x], self.weights.indptr[x + 1]
        return self.weights.indices[start:stop].astype(np.int64), self.weights.data[start:stop]

    def index_of(self, label: Label) -> int:
        if label in self._index:
            return self._index[label]
        # CLI selectors arrive as strings
        if isinstance(label, str):
            try:
                as_int = int(label)
            except ValueError:
                as_int = None
            if as_int is not None and as_int in self._index:
                return self._index[as_int]
        raise VertexOutOfRangeError(f"unknown vertex label {label!r}")

    def subset(self, labels: Iterable[Label]) -> VertexSubset:
        mask = np.zeros(self._n, dtype=bool)
        for label in labels:
            mask[self.index_of(label)] = True
        return mask

    def function(self, values: Sequence[float]) -> GraphFunction:
        """Bind values to this graph, checking the length."""
        array = np.asarray(values, dtype=np.float64)
        if array.shape != (self._n,):
            raise GraphValidationError("graph function needs one value per vertex", array.shape)
        return array

    def replace(
        self,
        edge_weights: Optional[Sequence[float]] = None,
        measure: Optional[Sequence[float]] = None,
        potential: Optional[Sequence[float]] = None,
        interior: Optional[VertexSubset] = None,
    ) -> "WeightedGraph":
        """Copy with some of the data swapped; edge_weights align with edges()."""
        b = self.edge_b if edge_weights is None else np.asarray(edge_weights, dtype=np.float64)
        if b.shape != self.edge_b.shape:
            raise GraphValidationError("edge weights must align with the stored edges", b.shape)
        mask = self.interior if interior is None else np.asarray(interior, dtype=bool)
        return WeightedGraph(
            self._n,
            zip(self.edge_x.tolist(), self.edge_y.tolist(), b.tolist()),
            measure=self.measure if measure is None else measure,
            potential=self.potential if potential is None else potential,
            interior=np.flatnonzero(mask).tolist(),
            labels=self.labels,
        )

    def __repr__(self) -> str:
        return (
            f"WeightedGraph(vertices={self._n}, edges={self.edge_count}, "
            f"interior={int(self.interior.sum())})"
        )
