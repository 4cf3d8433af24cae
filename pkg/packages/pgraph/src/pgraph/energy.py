"""Energy functional, weighted bracket and the simplified energies.

Every sum over pairs is taken once per undirected edge (the 1/2 double-sum
convention), for h as well as for h_u, h_{u,1}, h_{u,2} and h_{u,3}. With
this convention the ground state representation is an equality at p = 2.

Terms with zero base and negative exponent (1 < p < 2) are set to 0.
"""

from typing import Union

import numpy as np
import numpy.typing as npt

from common.logging import get_logger
from pgraph.domain.model.graph import GraphFunction, PExponent, WeightedGraph, require_exponent
from pgraph.domain.model.reports import CorollaryBoundsReport, EnergyReport, GsrReport
from pgraph.exceptions import NonNegativityError, SupportError
from pgraph.operators import schroedinger_apply

logger = get_logger(__name__)

Exponent = Union[float, PExponent]
FloatArray = npt.NDArray[np.float64]


def energy(g: WeightedGraph, f: GraphFunction, p: Exponent, with_terms: bool = False) -> EnergyReport:
    """h(f) = sum_edges b |grad f|^p + sum_x c |f|^p."""
    exponent = require_exponent(p, strict=False)
    f = g.function(f)
    terms = g.edge_b * np.abs(f[g.edge_x] - f[g.edge_y]) ** exponent
    gradient_part = float(np.sum(terms))
    potential_part = float(np.sum(g.potential * np.abs(f) ** exponent))
    return EnergyReport(
        total=gradient_part + potential_part,
        gradient_part=gradient_part,
        potential_part=potential_part,
        edge_terms=terms.tolist() if with_terms else None,
    )


def bracket(g: WeightedGraph, f: GraphFunction, phi: GraphFunction) -> float:
    """<f, phi> = sum_x f(x) phi(x) m(x).

    Vertices where one factor is 0 contribute 0 even if the other one is
    undefined (NaN), so Hf can be paired with test functions supported in
    the interior.
    """
    f = g.function(f)
    phi = g.function(phi)
    active = (f != 0) & (phi != 0)
    return float(np.sum(f[active] * phi[active] * g.measure[active]))


def require_nonnegative(g: WeightedGraph, u: GraphFunction) -> GraphFunction:
    u = g.function(u)
    if np.any(u < 0):
        bad = int(np.flatnonzero(u < 0)[0])
        raise NonNegativityError(f"u({g.labels[bad]!r}) = {u[bad]} is negative")
    return u


def require_interior_support(g: WeightedGraph, phi: GraphFunction) -> GraphFunction:
    phi = g.function(phi)
    outside = (phi != 0) & ~g.interior
    if np.any(outside):
        bad = int(np.flatnonzero(outside)[0])
        raise SupportError(f"phi({g.labels[bad]!r}) != 0 outside the interior")
    return phi


def _powered(base: FloatArray, prefactor: FloatArray, exponent: float) -> FloatArray:
    """prefactor * base^exponent with 0 wherever base is 0."""
    positive = base > 0
    safe = np.where(positive, base, 1.0)
    return np.where(positive, prefactor * safe**exponent, 0.0)


def _edge_values(g: WeightedGraph, u: GraphFunction, phi: GraphFunction):
    u = require_nonnegative(g, u)
    phi = g.function(phi)
    return u[g.edge_x], u[g.edge_y], phi[g.edge_x], phi[g.edge_y]


def simplified_energy(g: WeightedGraph, u: GraphFunction, phi: GraphFunction, p: Exponent) -> float:
    """h_u(phi): sum_edges b u(x)u(y) (grad phi)^2 [ (u(x)u(y))^{1/2}|grad phi| + avg|phi| |grad u| ]^{p-2}."""
    exponent = require_exponent(p)
    ux, uy, fx, fy = _edge_values(g, u, phi)
    product = ux * uy
    grad_phi = fx - fy
    base = np.sqrt(product) * np.abs(grad_phi) + 0.5 * (np.abs(fx) + np.abs(fy)) * np.abs(ux - uy)
    terms = _powered(base, g.edge_b * product * grad_phi**2, exponent - 2)
    return float(np.sum(terms))


def simplified_energy_1(g: WeightedGraph, u: GraphFunction, phi: GraphFunction, p: Exponent) -> float:
    """h_{u,1}(phi) = sum_edges b (u(x)u(y))^{p/2} |grad phi|^p."""
    exponent = require_exponent(p)
    ux, uy, fx, fy = _edge_values(g, u, phi)
    return float(np.sum(g.edge_b * (ux * uy) ** (exponent / 2) * np.abs(fx - fy) ** exponent))


def simplified_energy_2(g: WeightedGraph, u: GraphFunction, phi: GraphFunction, p: Exponent) -> float:
    """h_{u,2}(phi) = sum_edges b u(x)u(y) |grad u|^{p-2} (avg|phi|)^{p-2} (grad phi)^2, for p >= 2."""
    exponent = require_exponent(p, at_least=2)
    ux, uy, fx, fy = _edge_values(g, u, phi)
    prefactor = g.edge_b * ux * uy * (fx - fy) ** 2
    if exponent == 2:
        return float(np.sum(prefactor))
    base = np.abs(ux - uy) * 0.5 * (np.abs(fx) + np.abs(fy))
    return float(np.sum(prefactor * base ** (exponent - 2)))


def simplified_energy_3(g: WeightedGraph, u: GraphFunction, phi: GraphFunction, p: Exponent) -> float:
    """h_{u,3}(phi): like h_u with the phi-average replaced by phi_u and |grad phi| by |grad(u phi)|.

    phi_u(x, y) is phi(x) when u(x) < u(y), phi(y) when u(x) > u(y) and 0
    when u(x) = u(y).
    """
    exponent = require_exponent(p)
    ux, uy, fx, fy = _edge_values(g, u, phi)
    grad_u = ux - uy
    phi_u = np.where(grad_u < 0, fx, np.where(grad_u > 0, fy, 0.0))
    base = np.abs(ux * fx - uy * fy) + np.abs(phi_u) * np.abs(grad_u)
    terms = _powered(base, g.edge_b * ux * uy * (fx - fy) ** 2, exponent - 2)
    return float(np.sum(terms))


def picone_residual(g: WeightedGraph, u: GraphFunction, phi: GraphFunction, p: Exponent) -> float:
    """h(u phi) - <Hu, u |phi|^p>; nonnegative by Picone's inequality."""
    exponent = require_exponent(p)
    u = require_nonnegative(g, u)
    phi = require_interior_support(g, phi)
    h_u = schroedinger_apply(g, u, exponent)
    return energy(g, u * phi, exponent).total - bracket(g, h_u, u * np.abs(phi) ** exponent)


def gsr_check(g: WeightedGraph, u: GraphFunction, phi: GraphFunction, p: Exponent) -> GsrReport:
    """Evaluate both sides of the ground state representation.

    Raises:
        NonNegativityError: if u is negative somewhere
        SupportError: if phi is nonzero outside the interior
    """
    lhs = picone_residual(g, u, phi, p)
    rhs = simplified_energy(g, u, phi, p)
    if rhs > 0:
        return GsrReport(lhs=lhs, rhs=rhs, ratio=lhs / rhs)
    degenerate = bool(abs(lhs) <= 1e-12)
    if not degenerate:
        logger.debug("Simplified energy vanishes while lhs does not", extra={"lhs": lhs})
    return GsrReport(lhs=lhs, rhs=rhs, degenerate=degenerate)


def corollary_bounds_check(
    g: WeightedGraph, u: GraphFunction, phi: GraphFunction, p: Exponent
) -> CorollaryBoundsReport:
    """Compare the ground-state lhs with h_{u,1} (and h_{u,1} + h_{u,2} for p >= 2).

    For p >= 2 checks lhs >= 2 c_p h_{u,1} (2 c_p is the edge-once form of
    c_p); for 1 < p <= 2 checks lhs <= c'_p h_{u,1} with the calibrated
    upper constant. At p = 2 both hold with equality.
    """
    from pgraph.inequalities import calibrated_upper_constant, constant_cp

    exponent = require_exponent(p)
    lhs = picone_residual(g, u, phi, exponent)
    h_u1 = simplified_energy_1(g, u, phi, exponent)
    tol = 1e-9 * (1.0 + abs(lhs))

    slacks = []
    lower = upper = None
    h_u2 = sum_ratio = None
    if exponent >= 2:
        lower = 2 * constant_cp(exponent)
        slacks.append(lhs - lower * h_u1)
        h_u2 = simplified_energy_2(g, u, phi, exponent)
        if h_u1 + h_u2 > 0:
            sum_ratio = lhs / (h_u1 + h_u2)
    if exponent <= 2:
        upper = calibrated_upper_constant(exponent)
        slacks.append(upper * h_u1 - lhs)
    slack = min(slacks)
    return CorollaryBoundsReport(
        p=exponent,
        lhs=lhs,
        h_u1=h_u1,
        h_u2=h_u2,
        lower_constant=lower,
        upper_constant=upper,
        holds=bool(slack >= -tol),
        slack=slack,
        sum_ratio=sum_ratio,
    )
