"""Scalar inequalities behind the ground state representation, with grid scans.

Kernels are vectorized over numpy arrays. The standard (a, t) grid is
a in [-10, 10] with step 1e-2 plus the points {0, t, 1} in every t-row, and
t in [0, 1] with step 1e-3. Scans work on blocks of t-rows in a thread pool
and merge block results in grid order, so the first extremal grid index wins
ties.

Ratios are always lhs / rhs of the relation being scanned.
"""

from concurrent.futures import ThreadPoolExecutor
from functools import cache
from typing import Callable, Iterator, Optional, Union

import mpmath
import numpy as np
import numpy.typing as npt
from scipy.optimize import minimize_scalar

from common.environments import get_thread_count
from common.logging import get_logger
from pgraph.domain.model.graph import require_exponent
from pgraph.domain.model.reports import (
    GridCheck,
    GridPoint,
    GridSpec,
    Ineq1Result,
    InequalityCheck,
    InequalityPoint,
    ScanResult,
)
from pgraph.exceptions import EmptyGridError, ExponentError

logger = get_logger(__name__)

FloatArray = npt.NDArray[np.float64]
Kernel = Callable[[FloatArray, FloatArray, float], tuple[FloatArray, FloatArray]]

DEGENERATE_THRESHOLD = 1e-14
ROW_BLOCK = 64
CALIBRATION_SAFETY = 1.25
EXTENDED_DPS = 50


def _power0(base: FloatArray, exponent: float) -> FloatArray:
    """base^exponent with 0 where base is 0, for negative exponents too."""
    positive = base > 0
    return np.where(positive, np.where(positive, base, 1.0) ** exponent, 0.0)


def _phi(t: FloatArray, p: float) -> FloatArray:
    return np.sign(t) * np.abs(t) ** (p - 1)


# -- kernels -----------------------------------------------------------------


def _ineq2_kernel(a: FloatArray, t: FloatArray, p: float) -> tuple[FloatArray, FloatArray]:
    lhs = np.abs(a - t) ** p - (1 - t) ** (p - 1) * (np.abs(a) ** p - t)
    rhs = t * (a - 1) ** 2 * _power0(np.abs(a - t) + 1 - t, p - 2)
    return lhs, rhs


def _edge_gap(ux, uy, fx, fy, p: float) -> FloatArray:
    """Per-edge ground-state term |grad(u phi)|^p - phi_p(grad u)(u(x)|phi(x)|^p - u(y)|phi(y)|^p)."""
    return np.abs(ux * fx - uy * fy) ** p - _phi(ux - uy, p) * (ux * np.abs(fx) ** p - uy * np.abs(fy) ** p)


def _oriented(a: FloatArray, t: FloatArray) -> Iterator[tuple[FloatArray, ...]]:
    """u = (1, t) with phi = (1, a) and phi = (a, 1)."""
    one = np.ones_like(a)
    yield one, t, one, a
    yield one, t, a, one


def _gsr_like_kernel(a: FloatArray, t: FloatArray, p: float) -> tuple[FloatArray, FloatArray]:
    lhs, rhs = [], []
    for ux, uy, fx, fy in _oriented(a, t):
        lhs.append(_edge_gap(ux, uy, fx, fy, p))
        base = np.sqrt(ux * uy) * np.abs(fx - fy) + 0.5 * (np.abs(fx) + np.abs(fy)) * np.abs(ux - uy)
        rhs.append(ux * uy * (fx - fy) ** 2 * _power0(base, p - 2))
    return np.stack(lhs, axis=-1), np.stack(rhs, axis=-1)


def _corollary_kernel(a: FloatArray, t: FloatArray, p: float) -> tuple[FloatArray, FloatArray]:
    lhs, rhs = [], []
    for ux, uy, fx, fy in _oriented(a, t):
        lhs.append(_edge_gap(ux, uy, fx, fy, p))
        rhs.append((ux * uy) ** (p / 2) * np.abs(fx - fy) ** p)
    return np.stack(lhs, axis=-1), np.stack(rhs, axis=-1)


SCAN_KERNELS: dict[str, Kernel] = {
    "ineq2": _ineq2_kernel,
    "gsr_like": _gsr_like_kernel,
    "corollary": _corollary_kernel,
}


# -- grids -------------------------------------------------------------------


def _axis(start: float, stop: float, step: float) -> FloatArray:
    count = int(round((stop - start) / step)) + 1
    if count < 1:
        raise EmptyGridError(f"empty axis [{start}, {stop}] with step {step}")
    return np.round(np.linspace(start, stop, count), 12)


def _row_blocks(grid: GridSpec) -> list[tuple[FloatArray, FloatArray]]:
    """(a, t) blocks of shape (rows, columns) covering the grid in row order."""
    a_axis = _axis(grid.a_min, grid.a_max, grid.a_step)
    t_axis = _axis(grid.t_min, grid.t_max, grid.t_step)
    blocks = []
    for start in range(0, t_axis.size, ROW_BLOCK):
        t_rows = t_axis[start : start + ROW_BLOCK, None]
        a = np.broadcast_to(a_axis, (t_rows.shape[0], a_axis.size))
        if grid.special_points:
            specials = np.concatenate([np.zeros_like(t_rows), t_rows, np.ones_like(t_rows)], axis=1)
            a = np.concatenate([a, specials], axis=1)
        blocks.append((np.ascontiguousarray(a), np.broadcast_to(t_rows, a.shape).copy()))
    return blocks


def _map_blocks(fn: Callable, blocks: list) -> list:
    threads = min(get_thread_count(), len(blocks)) or 1
    if threads == 1:
        return [fn(block) for block in blocks]
    with ThreadPoolExecutor(max_workers=threads) as executor:
        return list(executor.map(fn, blocks))


def _on_conjectured_set(point: GridPoint) -> bool:
    close = lambda x, y: abs(x - y) <= 1e-12  # noqa: E731
    return close(point.t, 0) or close(point.t, 1) or any(close(point.a, s) for s in (0.0, point.t, 1.0))


def scan_equivalence(kernel: str, p: float, grid: Optional[GridSpec] = None) -> ScanResult:
    """Inf and sup of lhs/rhs of a two-sided relation over an (a, t) grid.

    Points where both sides are below 1e-14 (1 + |a|^p) are degenerate; they
    are counted but left out of the ratio statistics.

    Raises:
        ExponentError: if p <= 1
        EmptyGridError: if every grid point is degenerate
    """
    if kernel not in SCAN_KERNELS:
        raise ValueError(f"unknown scan kernel {kernel!r}; choose from {sorted(SCAN_KERNELS)}")
    exponent = require_exponent(p)
    grid = grid or GridSpec()
    evaluate = SCAN_KERNELS[kernel]

    def scan_block(block: tuple[FloatArray, FloatArray]):
        a, t = block
        lhs, rhs = evaluate(a, t, exponent)
        if lhs.ndim == 2:
            lhs, rhs = lhs[..., None], rhs[..., None]
        threshold = DEGENERATE_THRESHOLD * (1 + np.abs(a) ** exponent)[..., None]
        degenerate = (np.abs(lhs) <= threshold) & (np.abs(rhs) <= threshold)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(rhs != 0, lhs / np.where(rhs != 0, rhs, 1.0), np.inf * np.sign(lhs))
        ratio = np.where(degenerate, np.nan, ratio).reshape(a.shape[0], a.shape[1], -1)
        valid = ~np.isnan(ratio)
        if not valid.any():
            return None, None, int(degenerate.sum()), 0
        flat = np.where(valid, ratio, np.inf).ravel()
        low = int(np.argmin(flat))
        flat_high = np.where(valid, ratio, -np.inf).ravel()
        high = int(np.argmax(flat_high))

        def point(index: int) -> tuple[float, GridPoint]:
            row, column, _ = np.unravel_index(index, ratio.shape)
            return float(ratio.ravel()[index]), GridPoint(a=float(a[row, column]), t=float(t[row, column]))

        return point(low), point(high), int(degenerate.sum()), int(valid.sum())

    results = _map_blocks(scan_block, _row_blocks(grid))
    best_low = best_high = None
    excluded = evaluated = 0
    for low, high, skipped, counted in results:
        excluded += skipped
        evaluated += counted
        if low is not None and (best_low is None or low[0] < best_low[0]):
            best_low = low
        if high is not None and (best_high is None or high[0] > best_high[0]):
            best_high = high
    if best_low is None or best_high is None:
        raise EmptyGridError(f"no admissible points for kernel {kernel} at p={exponent}")

    result = ScanResult(
        kernel=kernel,
        p=exponent,
        inf_ratio=best_low[0],
        sup_ratio=best_high[0],
        argmin=best_low[1],
        argmax=best_high[1],
        grid=grid,
        evaluated=evaluated,
        excluded=excluded,
        extremals_on_conjectured_set=_on_conjectured_set(best_low[1]) and _on_conjectured_set(best_high[1]),
    )
    logger.info(
        "Scan finished",
        extra={
            "kernel": kernel,
            "p": exponent,
            "inf_ratio": result.inf_ratio,
            "sup_ratio": result.sup_ratio,
            "evaluated": evaluated,
        },
    )
    return result


# -- pointwise checks ----------------------------------------------------------


def ineq2_sides(point: InequalityPoint, precise: bool = False) -> tuple[float, float]:
    """Both sides of |a-t|^p - (1-t)^{p-1}(|a|^p - t) ~ t|a-1|^2 (|a-t| + 1 - t)^{p-2}.

    The right side is 0 when 1 < p < 2 and a = t = 1. With precise=True both
    sides are evaluated in extended precision and rounded once.

    Raises:
        ExponentError: if p <= 1 (the relation fails at p = 1)
    """
    exponent = require_exponent(point.p)
    if precise:
        with mpmath.workdps(EXTENDED_DPS):
            a, t, p = mpmath.mpf(point.a), mpmath.mpf(point.t), mpmath.mpf(exponent)
            lhs = abs(a - t) ** p - (1 - t) ** (p - 1) * (abs(a) ** p - t)
            base = abs(a - t) + 1 - t
            rhs = mpmath.mpf(0) if base == 0 else t * (a - 1) ** 2 * base ** (p - 2)
            return float(lhs), float(rhs)
    lhs, rhs = _ineq2_kernel(np.array(point.a), np.array(point.t), exponent)
    return float(lhs), float(rhs)


def _ineq1_sides(a, t) -> tuple[FloatArray, FloatArray]:
    lhs = np.abs(a - t) + 1 - t
    rhs = np.sqrt(t) * np.abs(a - 1) + (1 - t) * (np.abs(a) + 1) / 2
    return lhs, rhs


def ineq1_check(a: float, t: float, C: float) -> Ineq1Result:
    """Whether |a-t| + 1 - t <= C rhs (upper) and >= C rhs (lower).

    rhs = t^{1/2}|a-1| + (1-t)(|a|+1)/2; the optimal constants are 2 and 1/2.
    """
    if not 0 <= t <= 1:
        raise ValueError(f"t must lie in [0, 1], got {t}")
    lhs, rhs = _ineq1_sides(np.array(a), np.array(t))
    tol = 1e-12 * (1 + float(lhs))
    return Ineq1Result(upper_holds=bool(lhs <= C * rhs + tol), lower_holds=bool(lhs >= C * rhs - tol))


def _ineq34_slack(a, t, p: float) -> FloatArray:
    """Signed slack of t|a-1|^2 vs t^{p/2}|a-1|^p (|a-t|+1-t)^{2-p}, oriented by regime."""
    lower = t * (a - 1) ** 2
    scale = t ** (p / 2) * np.abs(a - 1) ** p
    upper = np.where(scale > 0, scale * _power0(np.abs(a - t) + 1 - t, 2 - p), 0.0)
    return upper - lower if p <= 2 else lower - upper


def ineq34_check(a: float, t: float, p: float) -> bool:
    """t|a-1|^2 <= t^{p/2}|a-1|^p (|a-t|+1-t)^{2-p} for 1 < p <= 2, reversed for p >= 2."""
    exponent = require_exponent(p)
    slack = float(_ineq34_slack(np.array(a), np.array(t), exponent))
    return slack >= -1e-12 * (1 + t * (a - 1) ** 2)


def ptriangle_check(alpha: float, beta: float, p: float) -> bool:
    """|alpha + beta|^p <= 2^p (|alpha|^p + |beta|^p) for p >= 0."""
    if p < 0:
        raise ExponentError(f"p must be >= 0, got {p}")
    lhs = abs(alpha + beta) ** p
    rhs = 2**p * (abs(alpha) ** p + abs(beta) ** p)
    return lhs <= rhs * (1 + 1e-12)


def ineq5_constants(p: float) -> tuple[float, float]:
    """Optimal (upper, lower) constants c with lower (a+b)^p <= a^p + b^p <= upper (a+b)^p."""
    if p < 0:
        raise ExponentError(f"p must be >= 0, got {p}")
    if p <= 1:
        return 2 ** (1 - p), 1.0
    return 1.0, 2 ** (1 - p)


def ineq5_check(alpha: float, beta: float, p: float) -> bool:
    """alpha^p + beta^p lies between the optimal multiples of (alpha + beta)^p."""
    if alpha < 0 or beta < 0:
        raise ValueError("alpha and beta must be nonnegative")
    upper, lower = ineq5_constants(p)
    total = alpha**p + beta**p
    joint = (alpha + beta) ** p
    tol = 1e-12 * (1 + total)
    return lower * joint - tol <= total <= upper * joint + tol


def lindqvist_constant(p: float) -> float:
    exponent = require_exponent(p)
    if exponent >= 2:
        return 1 / (2 ** (exponent - 1) - 1)
    return 3 * exponent * (exponent - 1) / 16


def _lindqvist_slack(a, b, p: float) -> FloatArray:
    c = lindqvist_constant(p)
    base = np.abs(a) ** p - np.abs(b) ** p - p * _phi(b, p) * (a - b)
    if p >= 2:
        return base - c * np.abs(a - b) ** p
    remainder = (a - b) ** 2 * _power0(np.abs(a) + np.abs(b), p - 2)
    return base - c * remainder


def lindqvist_check(a: float, b: float, p: float) -> InequalityCheck:
    """|a|^p - |b|^p >= p phi_p(b)(a - b) + c_p R(a, b), scalar case.

    R = |a-b|^p with c_p = 1/(2^{p-1}-1) for p >= 2, and
    R = |a-b|^2 / (|a|+|b|)^{2-p} (0 at a = b = 0) with c_p = 3p(p-1)/16 for 1 < p < 2.
    """
    slack = float(_lindqvist_slack(np.array(a, dtype=float), np.array(b, dtype=float), require_exponent(p)))
    return InequalityCheck(holds=slack >= -1e-12 * (1 + abs(a) ** p + abs(b) ** p), slack=slack)


# -- grid checks -------------------------------------------------------------


def _grid_check(slack_fn: Callable[[FloatArray, FloatArray], tuple[FloatArray, FloatArray]], blocks) -> GridCheck:
    """slack_fn returns (slack, tolerance); the first point with slack < -tolerance is the witness."""

    def check_block(block):
        x, y = block
        slack, tol = slack_fn(x, y)
        bad = np.flatnonzero((slack < -tol).ravel())
        witness = None
        if bad.size:
            index = int(bad[0])
            witness = [float(x.ravel()[index]), float(y.ravel()[index])]
        return float(np.min(slack)), witness, int(slack.size)

    results = _map_blocks(check_block, blocks)
    witness = next((w for _, w, _ in results if w is not None), None)
    return GridCheck(
        holds=witness is None,
        points=sum(count for _, _, count in results),
        worst_slack=min(worst for worst, _, _ in results),
        witness=witness,
    )


def ineq1_grid(C: float, direction: str, grid: Optional[GridSpec] = None) -> GridCheck:
    """Check the upper (lhs <= C rhs) or lower (lhs >= C rhs) form of ineq1 on a grid.

    Witness coordinates are [a, t].
    """
    if direction not in ("upper", "lower"):
        raise ValueError("direction must be 'upper' or 'lower'")

    def slack(a, t):
        lhs, rhs = _ineq1_sides(a, t)
        value = C * rhs - lhs if direction == "upper" else lhs - C * rhs
        return value, 1e-12 * (1 + lhs)

    return _grid_check(slack, _row_blocks(grid or GridSpec()))


def ineq34_grid(p: float, grid: Optional[GridSpec] = None) -> GridCheck:
    exponent = require_exponent(p)
    return _grid_check(
        lambda a, t: (_ineq34_slack(a, t, exponent), 1e-12 * (1 + t * (a - 1) ** 2)),
        _row_blocks(grid or GridSpec()),
    )


def _square_blocks(low: float, high: float, step: float) -> list[tuple[FloatArray, FloatArray]]:
    axis = _axis(low, high, step)
    blocks = []
    for start in range(0, axis.size, ROW_BLOCK):
        rows = axis[start : start + ROW_BLOCK, None]
        shape = (rows.shape[0], axis.size)
        blocks.append((np.broadcast_to(rows, shape).copy(), np.broadcast_to(axis, shape).copy()))
    return blocks


def lindqvist_grid(p: float, bound: float = 5.0, step: float = 1e-2) -> GridCheck:
    """Lindqvist slack on (a, b) in [-bound, bound]^2; witness coordinates are [a, b]."""
    exponent = require_exponent(p)
    return _grid_check(
        lambda a, b: (_lindqvist_slack(a, b, exponent), 1e-12 * (1 + np.abs(a) ** exponent + np.abs(b) ** exponent)),
        _square_blocks(-bound, bound, step),
    )


def ineq5_grid(p: float, bound: float = 10.0, step: float = 1e-2) -> GridCheck:
    """Both ineq5 bounds on (alpha, beta) in [0, bound]^2; witness coordinates are [alpha, beta]."""
    upper, lower = ineq5_constants(p)

    def slack(alpha, beta):
        total = alpha**p + beta**p
        joint = (alpha + beta) ** p
        return np.minimum(upper * joint - total, total - lower * joint), 1e-12 * (1 + total)

    return _grid_check(slack, _square_blocks(0.0, bound, step))


# -- constants ---------------------------------------------------------------


def _cp_objective(t, p: float):
    return (1 - t) ** p - t**p + p * t ** (p - 1)


@cache
def constant_cp(p: float) -> float:
    """c_p = (1/2) inf over t in (0, 1/2) of (1-t)^p - t^p + p t^{p-1}, for p >= 2.

    A dense grid locates the minimum, bounded scalar minimization refines it.
    The infimum over the open interval equals the minimum over its closure.
    """
    exponent = require_exponent(p, at_least=2)
    ts = np.linspace(0.0, 0.5, 20001)
    values = _cp_objective(ts, exponent)
    index = int(np.argmin(values))
    best = float(values[index])
    low, high = ts[max(index - 1, 0)], ts[min(index + 1, ts.size - 1)]
    if high > low:
        refined = minimize_scalar(
            lambda t: float(_cp_objective(t, exponent)),
            bounds=(low, high),
            method="bounded",
            options={"xatol": 1e-14},
        )
        best = min(best, float(refined.fun))
    return 0.5 * best


@cache
def calibrated_upper_constant(p: float) -> float:
    """Upper constant c'_p with lhs <= c'_p h_{u,1} (edge-once) for 1 < p <= 2.

    Taken as 1.25 times the supremum of the per-edge ratio found by the
    corollary scan; exactly 1 at p = 2.
    """
    exponent = require_exponent(p)
    if exponent > 2:
        raise ExponentError(f"the upper constant is only defined for 1 < p <= 2, got {exponent}")
    if exponent == 2:
        return 1.0
    scan = scan_equivalence("corollary", exponent)
    return CALIBRATION_SAFETY * scan.sup_ratio
