"""Variational capacity cap(x0, V) = inf { h(phi) : phi in C_c(V), phi(x0) = pin }.

The minimization runs over the free coordinates V \\ {x0} with projected
Barzilai-Borwein descent and a nonmonotone Armijo line search. The gradient of
h at x is p m(x) H phi(x). When c >= 0 on V the problem is convex and the
minimizer lies in the box between 0 and the pin, so iterates are projected onto
that box; otherwise the descent is unconstrained and restarted from random
points.
"""

import warnings
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from typing import Optional

import numpy as np
import numpy.typing as npt
from scipy import sparse
from scipy.sparse.linalg import MatrixRankWarning, spsolve

from common.environments import get_thread_count
from common.logging import get_logger
from pgraph.domain.model.graph import VertexSubset, WeightedGraph, require_exponent
from pgraph.domain.model.reports import CapacityOptions, CapacityResult
from pgraph.energy import energy
from pgraph.exceptions import SupportError
from pgraph.graph import as_subset
from pgraph.operators import phi_p

logger = get_logger(__name__)

FloatArray = npt.NDArray[np.float64]

ARMIJO = 1e-4
NONMONOTONE_MEMORY = 10
STEP_BOUNDS = (1e-12, 1e12)
DIVERGENCE = 1e12


class _Problem:
    """h restricted to functions vanishing off V with phi(x0) = pin."""

    def __init__(self, g: WeightedGraph, x0: int, mask: VertexSubset, p: float, pin: float):
        self.g = g
        self.p = p
        self.pin = pin
        self.x0 = x0
        free = mask.copy()
        free[x0] = False
        self.free = np.flatnonzero(free)

    def full(self, values: FloatArray) -> FloatArray:
        phi = np.zeros(self.g.vertex_count)
        phi[self.free] = values
        phi[self.x0] = self.pin
        return phi

    def value(self, values: FloatArray) -> float:
        g, phi = self.g, self.full(values)
        edges = np.sum(g.edge_b * np.abs(phi[g.edge_x] - phi[g.edge_y]) ** self.p)
        return float(edges + np.sum(g.potential * np.abs(phi) ** self.p))

    def gradient(self, values: FloatArray) -> FloatArray:
        g, phi = self.g, self.full(values)
        flux = g.edge_b * phi_p(phi[g.edge_x] - phi[g.edge_y], self.p)
        n = g.vertex_count
        total = np.bincount(g.edge_x, flux, n) - np.bincount(g.edge_y, flux, n)
        total += g.potential * phi_p(phi, self.p)
        return self.p * total[self.free]


def _linear_warm_start(problem: _Problem) -> Optional[FloatArray]:
    """Minimizer of the p = 2 problem: (diag(deg + c) - W) restricted to the free set."""
    g, free = problem.g, problem.free
    matrix = (sparse.diags(g.degrees + g.potential) - g.weights).tocsr()
    system = matrix[free][:, free].tocsc()
    rhs = -problem.pin * np.asarray(matrix[free][:, [problem.x0]].todense()).ravel()
    with warnings.catch_warnings():
        warnings.simplefilter("error", MatrixRankWarning)
        try:
            solution = np.atleast_1d(spsolve(system, rhs))
        except (RuntimeError, ValueError, MatrixRankWarning):
            logger.debug("Linear warm start is singular", extra={"free": int(free.size)})
            return None
    if not np.all(np.isfinite(solution)):
        return None
    return solution


def _descend(problem: _Problem, start: FloatArray, box: Optional[tuple[float, float]], opts: CapacityOptions):
    """Projected BB descent; returns (values, energy, iterations, stationarity, diverged)."""

    def project(values: FloatArray) -> FloatArray:
        return values if box is None else np.clip(values, box[0], box[1])

    x = project(start)
    fx = problem.value(x)
    grad = problem.gradient(x)
    history = deque([fx], maxlen=NONMONOTONE_MEMORY)
    trail = [fx]
    step = 1.0 / max(1.0, float(np.max(np.abs(grad), initial=0.0)))
    stationarity = float(np.max(np.abs(project(x - grad) - x), initial=0.0))
    iteration = 0
    while iteration < opts.max_iter and stationarity >= opts.grad_tol:
        iteration += 1
        direction = project(x - step * grad) - x
        slope = float(grad @ direction)
        if slope >= 0:
            break
        reference = max(history)
        scale = 1.0
        candidate = x + direction
        f_candidate = problem.value(candidate)
        while f_candidate > reference + ARMIJO * scale * slope:
            scale *= 0.5
            if scale < 1e-20:
                break
            candidate = x + scale * direction
            f_candidate = problem.value(candidate)
        if f_candidate > reference:
            # no acceptable step along a descent direction: numerically stationary
            break
        grad_candidate = problem.gradient(candidate)
        s, y = candidate - x, grad_candidate - grad
        curvature = float(s @ y)
        step = float(np.clip(s @ s / curvature, *STEP_BOUNDS)) if curvature > 0 else STEP_BOUNDS[1]
        x, fx, grad = candidate, f_candidate, grad_candidate
        history.append(fx)
        trail.append(fx)
        stationarity = float(np.max(np.abs(project(x - grad) - x), initial=0.0))
        if not np.isfinite(fx) or fx < -DIVERGENCE or float(np.max(np.abs(x), initial=0.0)) > DIVERGENCE:
            return x, fx, iteration, stationarity, True
        window = opts.stall_window
        if len(trail) > window and trail[-window - 1] - fx <= opts.rel_tol * max(1.0, abs(fx)):
            break
    return x, fx, iteration, stationarity, False


def capacity(
    g: WeightedGraph,
    x0: int,
    V: Optional[VertexSubset] = None,
    p: float = 2.0,
    opts: Optional[CapacityOptions] = None,
) -> CapacityResult:
    """Minimize h(phi) over phi supported in V with phi(x0) pinned.

    Args:
        g: graph window
        x0: pinned vertex (dense id)
        V: support set, defaults to the interior of g
        p: exponent, p > 1
        opts: solver options

    Returns:
        CapacityResult whose value is h(minimizer) recomputed from scratch

    Raises:
        SupportError: if x0 is not in V
    """
    exponent = require_exponent(p)
    opts = opts or CapacityOptions()
    mask = as_subset(g, g.interior if V is None else V)
    x0 = g.check_vertex(x0)
    if not mask[x0]:
        raise SupportError(f"pinned vertex {g.labels[x0]!r} is not in V")

    problem = _Problem(g, x0, mask, exponent, opts.pin)
    convex = bool(np.all(g.potential[mask] >= 0))
    box = (min(0.0, opts.pin), max(0.0, opts.pin)) if convex else None

    if problem.free.size == 0:
        values, iterations, stationarity, diverged = np.zeros(0), 0, 0.0, False
    else:
        warm = _linear_warm_start(problem)
        starts = [warm if warm is not None else np.zeros(problem.free.size)]
        if not convex:
            rng = np.random.default_rng(opts.seed)
            starts += [opts.pin * rng.random(problem.free.size) for _ in range(opts.restarts)]

        def run(start: FloatArray):
            return _descend(problem, start, box, opts)

        threads = min(get_thread_count(), len(starts))
        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as executor:
                runs = list(executor.map(run, starts))
        else:
            runs = [run(start) for start in starts]
        diverged = any(r[4] for r in runs)
        values, _, iterations, stationarity, _ = min(runs, key=lambda r: r[1])

    minimizer = problem.full(values)
    value = energy(g, minimizer, exponent).total
    status = "unbounded" if diverged else ("certified" if convex else "upper_bound")
    logger.debug(
        "Capacity solve finished",
        extra={
            "pinned": str(g.labels[x0]),
            "value": value,
            "iterations": iterations,
            "gradient_norm": stationarity,
            "status": status,
        },
    )
    return CapacityResult(
        value=value,
        minimizer=minimizer.tolist(),
        labels=list(g.labels),
        pinned_vertex=g.labels[x0],
        certified_convex=convex,
        status=status,
        iterations=iterations,
        gradient_norm=stationarity,
    )
