"""p-Laplacian and p-Schrödinger operators on weighted graph windows.

For a graph function f:

    Lf(x) = (1/m(x)) sum_y b(x,y) phi_p(f(x) - f(y))
    Hf(x) = Lf(x) + (c(x)/m(x)) phi_p(f(x))

with phi_p(t) = |t|^{p-2} t and phi_p(0) = 0 for every p. L is evaluated in
divergence form: the edge flux b phi_p(grad f) is an antisymmetric sparse
field and Lf is its divergence.
"""

from typing import Optional, Union

import numpy as np
import numpy.typing as npt
from scipy import sparse

from pgraph.domain.model.graph import GraphFunction, PExponent, VertexSubset, WeightedGraph, require_exponent
from pgraph.domain.model.reports import HarmonicityClass, HarmonicityKind
from pgraph.exceptions import NotInteriorError
from pgraph.graph import as_subset

Exponent = Union[float, PExponent]


def phi_p(t: Union[float, npt.ArrayLike], p: Exponent) -> Union[float, npt.NDArray[np.float64]]:
    """|t|^{p-2} t, with value 0 at t = 0 (also for 1 < p < 2)."""
    exponent = require_exponent(p, strict=False)
    values = np.asarray(t, dtype=np.float64)
    result = np.sign(values) * np.abs(values) ** (exponent - 1)
    if result.ndim == 0:
        return float(result)
    return result


def gradient(f: GraphFunction, x: int, y: int) -> float:
    """f(x) - f(y)."""
    return float(f[x] - f[y])


def edge_flux(g: WeightedGraph, f: GraphFunction, p: Exponent) -> sparse.csr_matrix:
    """Antisymmetric field b(x,y) phi_p(f(x) - f(y)) on the stored sparsity pattern."""
    f = g.function(f)
    w = g.weights
    rows = np.repeat(np.arange(g.vertex_count), np.diff(w.indptr))
    data = w.data * phi_p(f[rows] - f[w.indices], p)
    return sparse.csr_matrix((data, w.indices.copy(), w.indptr.copy()), shape=w.shape)


def divergence(g: WeightedGraph, field: sparse.spmatrix) -> GraphFunction:
    """(1/m(x)) sum_y field(x, y)."""
    return np.asarray(field.sum(axis=1)).ravel() / g.measure


def schroedinger_on(g: WeightedGraph, f: GraphFunction, p: Exponent, V: VertexSubset) -> GraphFunction:
    """Hf on V using the full window neighbourhood of each vertex; NaN off V."""
    mask = as_subset(g, V)
    f = g.function(f)
    values = divergence(g, edge_flux(g, f, p)) + g.potential / g.measure * phi_p(f, p)
    return np.where(mask, values, np.nan)


def schroedinger_apply(g: WeightedGraph, f: GraphFunction, p: Exponent) -> GraphFunction:
    """Hf on the interior; entries outside the interior are NaN (undefined)."""
    return schroedinger_on(g, f, p, g.interior)


def p_laplacian(g: WeightedGraph, f: GraphFunction, x: int, p: Exponent) -> float:
    """Lf(x) at a single interior vertex.

    Raises:
        NotInteriorError: if x is not in the interior
    """
    x = g.check_vertex(x)
    if not g.interior[x]:
        raise NotInteriorError(f"vertex {g.labels[x]!r} is not in the interior")
    f = g.function(f)
    ids, weights = g.neighbors(x)
    return float(np.sum(weights * phi_p(f[x] - f[ids], p)) / g.measure[x])


def greens_residual(
    g: WeightedGraph, f: GraphFunction, phi: GraphFunction, V: VertexSubset, p: Exponent
) -> float:
    """Absolute difference of the two sides of Green's formula on V.

    LHS = sum_{x in V} Hf(x) phi(x) m(x)
    RHS = edge-once sum over edges inside V of b phi_p(grad f) grad phi
          + sum_{x in V} c phi_p(f) phi
          + sum_{x in V, y in dV} b phi_p(f(x) - f(y)) phi(x)
    """
    mask = as_subset(g, V)
    f = g.function(f)
    phi = g.function(phi)

    h_values = schroedinger_on(g, f, p, mask)
    lhs = np.sum(h_values[mask] * phi[mask] * g.measure[mask])

    potential = np.sum((g.potential * phi_p(f, p) * phi)[mask])
    flux = g.edge_b * phi_p(f[g.edge_x] - f[g.edge_y], p)
    inside = mask[g.edge_x] & mask[g.edge_y]
    interior_term = np.sum((flux * (phi[g.edge_x] - phi[g.edge_y]))[inside])
    # edges leaving V, oriented from the V endpoint
    x_out = mask[g.edge_x] & ~mask[g.edge_y]
    y_out = mask[g.edge_y] & ~mask[g.edge_x]
    boundary_term = np.sum((flux * phi[g.edge_x])[x_out]) - np.sum((flux * phi[g.edge_y])[y_out])

    return float(abs(lhs - (interior_term + potential + boundary_term)))


def default_tolerance(g: WeightedGraph, u: GraphFunction, p: Exponent) -> float:
    """1e-9 (1 + max|u|^{p-1} max deg / min m)."""
    exponent = require_exponent(p, strict=False)
    scale = float(np.max(np.abs(u))) ** (exponent - 1) if u.size else 0.0
    return 1e-9 * (1.0 + scale * float(np.max(g.degrees)) / float(np.min(g.measure)))


def classify(
    g: WeightedGraph, u: GraphFunction, V: VertexSubset, p: Exponent, tol: Optional[float] = None
) -> HarmonicityClass:
    """Sign class of Hu on V up to tol (scale-aware default)."""
    mask = as_subset(g, V)
    u = g.function(u)
    if tol is None:
        tol = default_tolerance(g, u, p)
    values = schroedinger_on(g, u, p, mask)[mask]
    if values.size == 0:
        return HarmonicityClass(kind=HarmonicityKind.HARMONIC, tol=tol, min_value=0.0, max_value=0.0)
    low, high = float(np.min(values)), float(np.max(values))
    if max(abs(low), abs(high)) <= tol:
        kind = HarmonicityKind.HARMONIC
    elif low >= -tol:
        kind = HarmonicityKind.SUPERHARMONIC
    elif high <= tol:
        kind = HarmonicityKind.SUBHARMONIC
    else:
        kind = HarmonicityKind.NEITHER
    return HarmonicityClass(kind=kind, tol=tol, min_value=low, max_value=high)
