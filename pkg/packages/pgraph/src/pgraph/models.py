"""Built-in graph families with known behaviour, used as oracles.

Every family produces finite windows of an infinite (or growing) graph with
unit measure. Windows are nested as labelled subgraphs: window(r) is
contained in window(r + 1) and the vertices outside the interior are the
boundary of the window.
"""

import math
from typing import Callable, Literal, Optional, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from pgraph.domain.model.graph import GraphFunction, Label, PExponent, WeightedGraph, require_exponent
from pgraph.domain.model.reports import DisplayCheckReport
from pgraph.exceptions import ConfigError, GraphValidationError, SupportError

Family = Literal["nat_line", "int_line", "grid2d", "star", "complete", "weighted_line"]


def _uniform(count: int, value: float) -> list[float]:
    return [value] * count


def nat_line(radius: int, weight: float = 1.0, potential: float = 0.0) -> WeightedGraph:
    """Vertices 0..radius on the half-line; vertex 0 and the outer end are boundary."""
    if radius < 2:
        raise GraphValidationError("nat_line needs radius >= 2", radius)
    n = radius + 1
    return WeightedGraph(
        n,
        [(k, k + 1, weight) for k in range(radius)],
        potential=_uniform(n, potential),
        interior=range(1, radius),
    )


def int_line(radius: int, weight: float = 1.0, potential: float = 0.0) -> WeightedGraph:
    """Vertices -radius..radius (labels) with interior |n| < radius."""
    if radius < 1:
        raise GraphValidationError("int_line needs radius >= 1", radius)
    n = 2 * radius + 1
    return WeightedGraph(
        n,
        [(k, k + 1, weight) for k in range(n - 1)],
        potential=_uniform(n, potential),
        interior=range(1, n - 1),
        labels=list(range(-radius, radius + 1)),
    )


def grid_label(i: int, j: int) -> str:
    return f"{i},{j}"


def grid2d(radius: int, weight: float = 1.0, potential: float = 0.0) -> WeightedGraph:
    """(2r+1)^2 square grid with labels "i,j" and interior max(|i|, |j|) < r."""
    if radius < 1:
        raise GraphValidationError("grid2d needs radius >= 1", radius)
    side = 2 * radius + 1
    coords = [(i, j) for i in range(-radius, radius + 1) for j in range(-radius, radius + 1)]
    index = {c: k for k, c in enumerate(coords)}
    edges = []
    for (i, j), k in index.items():
        for neighbour in ((i + 1, j), (i, j + 1)):
            if neighbour in index:
                edges.append((k, index[neighbour], weight))
    interior = [k for (i, j), k in index.items() if max(abs(i), abs(j)) < radius]
    return WeightedGraph(
        side * side,
        edges,
        potential=_uniform(side * side, potential),
        interior=interior,
        labels=[grid_label(i, j) for i, j in coords],
    )


def weighted_line(
    weights: Sequence[float],
    measure: Optional[Sequence[float]] = None,
    potential: Optional[Sequence[float]] = None,
) -> WeightedGraph:
    """Line 0..len(weights) with b(k, k+1) = weights[k]; both ends are boundary.

    Raises:
        GraphValidationError: for a zero weight (it would disconnect the line)
    """
    if not weights:
        raise GraphValidationError("weighted_line needs at least one weight")
    for k, w in enumerate(weights):
        if w == 0:
            raise GraphValidationError("zero weight disconnects the line", (k, k + 1, w))
    n = len(weights) + 1
    interior = range(1, n - 1) if n > 2 else range(n)
    return WeightedGraph(
        n,
        [(k, k + 1, float(w)) for k, w in enumerate(weights)],
        measure=measure,
        potential=potential,
        interior=interior,
    )


def star(leaves: int, weight: float = 1.0, potential: float = 0.0) -> WeightedGraph:
    """Centre 0 joined to leaves 1..leaves; only the centre is interior."""
    if leaves < 1:
        raise GraphValidationError("star needs at least one leaf", leaves)
    return WeightedGraph(
        leaves + 1,
        [(0, k, weight) for k in range(1, leaves + 1)],
        potential=_uniform(leaves + 1, potential),
        interior=[0],
    )


def complete(n: int, weight: float = 1.0, potential: float = 0.0) -> WeightedGraph:
    """Complete graph on 0..n-1 with the last vertex as boundary."""
    if n < 2:
        raise GraphValidationError("complete graph needs n >= 2", n)
    return WeightedGraph(
        n,
        [(x, y, weight) for x in range(n) for y in range(x + 1, n)],
        potential=_uniform(n, potential),
        interior=range(n - 1),
    )


def erdos_renyi(
    n: int,
    edge_probability: float,
    seed: int,
    weight_range: tuple[float, float] = (0.0, 1.0),
    measure_range: tuple[float, float] = (0.0, 2.0),
    potential_range: tuple[float, float] = (0.0, 0.0),
    interior_fraction: float = 1.0,
) -> WeightedGraph:
    """Seeded random graph: weights in (low, high], measures in (low, high], potentials in [low, high).

    A spanning path 0-1-...-(n-1) is always present so the graph is connected.
    The first round(interior_fraction * n) vertices form the interior.
    """
    rng = np.random.default_rng(seed)

    def half_open(bounds: tuple[float, float], size) -> np.ndarray:
        low, high = bounds
        return high - (high - low) * rng.random(size)

    edges = {(k, k + 1) for k in range(n - 1)}
    for x in range(n):
        for y in range(x + 2, n):
            if rng.random() < edge_probability:
                edges.add((x, y))
    ordered = sorted(edges)
    weights = half_open(weight_range, len(ordered))
    low, high = potential_range
    potential = low + (high - low) * rng.random(n)
    interior_count = max(1, int(round(interior_fraction * n)))
    return WeightedGraph(
        n,
        [(x, y, float(w)) for (x, y), w in zip(ordered, weights)],
        measure=half_open(measure_range, n),
        potential=potential,
        interior=range(interior_count),
    )


def random_function(g: WeightedGraph, seed: int) -> GraphFunction:
    """Seeded uniform values in [-1, 1] on the interior, 0 elsewhere."""
    rng = np.random.default_rng(seed)
    values = rng.uniform(-1.0, 1.0, g.vertex_count)
    return np.where(g.interior, values, 0.0)


class ExhaustibleModel(BaseModel):
    """A model family with its parameters; window(r) builds the radius-r window."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    family: Family
    weight: float = Field(1.0, gt=0, description="Uniform edge weight")
    potential: float = Field(0.0, description="Uniform potential c")
    weights: Optional[tuple[float, ...]] = Field(None, description="weighted_line weights, outward")
    edge_weight: Optional[Callable[[Label, Label], float]] = Field(
        None, exclude=True, description="Overrides b(x, y) by label"
    )

    def window(self, radius: int) -> WeightedGraph:
        if self.family == "nat_line":
            g = nat_line(radius, self.weight, self.potential)
        elif self.family == "int_line":
            g = int_line(radius, self.weight, self.potential)
        elif self.family == "grid2d":
            g = grid2d(radius, self.weight, self.potential)
        elif self.family == "star":
            g = star(radius, self.weight, self.potential)
        elif self.family == "complete":
            g = complete(radius, self.weight, self.potential)
        else:
            if not self.weights or radius > len(self.weights):
                raise ConfigError(f"weighted_line has {len(self.weights or ())} weights, radius {radius} requested")
            g = weighted_line(
                [self.weight * w for w in self.weights[:radius]],
                potential=_uniform(radius + 1, self.potential),
            )
        if self.edge_weight is not None:
            g = g.replace(edge_weights=[self.edge_weight(g.labels[x], g.labels[y]) for x, y, _ in g.edges()])
        return g

    @property
    def root(self) -> Label:
        """Default root vertex: an interior vertex present in every window."""
        return {"nat_line": 1, "grid2d": grid_label(0, 0), "weighted_line": 1}.get(self.family, 0)

    def scaled(self, factor: float) -> "ExhaustibleModel":
        """Same family with every edge weight multiplied by factor."""
        return self.model_copy(update={"weight": self.weight * factor})


def hardy_u(n: int, p: float) -> float:
    """u(n) = n^{(p-1)/p}, the positive superharmonic function on the half-line."""
    exponent = require_exponent(p)
    if n < 0:
        raise ValueError(f"hardy_u is defined for n >= 0, got {n}")
    return float(n) ** ((exponent - 1) / exponent)


def hardy_function(g: WeightedGraph, p: float) -> GraphFunction:
    """hardy_u evaluated on the integer labels of a half-line window."""
    if not all(isinstance(label, int) and label >= 0 for label in g.labels):
        raise ConfigError("the hardy function needs nonnegative integer vertex labels")
    return g.function([hardy_u(int(label), p) for label in g.labels])


def alpha_seq(n: int, p: float) -> float:
    """alpha(n) = (1 - 1/n)^{1/q} with q = p/(p-1)."""
    exponent = require_exponent(p)
    if n < 1:
        raise ValueError(f"alpha_seq is defined for n >= 1, got {n}")
    q = PExponent(value=exponent).conjugate
    return (1.0 - 1.0 / n) ** (1.0 / q)


def gsr_display_check(radius: int, p: float, phi: Sequence[float]) -> DisplayCheckReport:
    """Both sides of the ground state representation on the half-line window.

    lhs = sum_{n>=1} |phi(n) - phi(n-1)|^p - w(n)|phi(n)|^p with w the Hardy
    weight of u(n) = n^{(p-1)/p}; rhs is the closed form in alpha(n). Also
    evaluates the h_{u,1} bound sum_{n>=2} alpha^{-p/2} |alpha phi(n) - phi(n-1)|^p.

    Raises:
        SupportError: if phi is nonzero at 0 or at the outer end of the window
    """
    from pgraph.criticality.hardy import hardy_witness
    from pgraph.energy import energy
    from pgraph.inequalities import calibrated_upper_constant, constant_cp

    exponent = require_exponent(p)
    g = nat_line(radius)
    phi = g.function(phi)
    if phi[0] != 0 or phi[-1] != 0:
        raise SupportError("phi must vanish at 0 and at the outer end of the window")

    u = hardy_function(g, exponent)
    w = np.asarray(hardy_witness(g, u, g.interior, exponent, samples=0).weights)
    lhs = energy(g, phi, exponent).total - float(np.sum(w * np.abs(phi) ** exponent * g.measure))

    rhs = 0.0
    corollary_rhs = 0.0
    for n in range(2, radius + 1):
        a = alpha_seq(n, exponent)
        gap = a * phi[n] - phi[n - 1]
        base = math.sqrt(a) * abs(gap) + 0.5 * (a * abs(phi[n]) + abs(phi[n - 1])) * (1 - a)
        if base > 0:
            rhs += gap**2 * base ** (exponent - 2) / a ** (exponent - 1)
        corollary_rhs += abs(gap) ** exponent / a ** (exponent / 2)

    tol = 1e-9 * (1.0 + abs(lhs))
    slacks = []
    if exponent >= 2:
        constant = 2 * constant_cp(exponent)
        slacks.append(lhs - constant * corollary_rhs)
    if exponent <= 2:
        constant = calibrated_upper_constant(exponent)
        slacks.append(constant * corollary_rhs - lhs)

    degenerate = bool(rhs == 0 and abs(lhs) <= 1e-12)
    return DisplayCheckReport(
        p=exponent,
        radius=radius,
        lhs=float(lhs),
        rhs=float(rhs),
        ratio=float(lhs / rhs) if rhs > 0 else None,
        degenerate=degenerate,
        corollary_rhs=float(corollary_rhs),
        corollary_constant=constant,
        corollary_holds=bool(min(slacks) >= -tol),
    )
