"""Apply action - evaluate Hf, the per-edge flux and Green's formula."""

from typing import Any, Mapping

from pgraph.actions import inputs
from pgraph.domain.model.config import RunConfig
from pgraph.operators import divergence, edge_flux, gradient, greens_residual, p_laplacian, phi_p, schroedinger_apply

GREEN_TOLERANCE = 1e-10


def handle(config: RunConfig) -> Mapping[str, Any]:
    """Hf on the interior for f given by --u; Green's formula against --phi when given."""
    g = inputs.window(config)
    f = inputs.u_values(config, g)
    values = schroedinger_apply(g, f, config.p).tolist()
    edges = []
    for x, y, b in g.edges():
        grad = gradient(f, x, y)
        edges.append({"x": g.labels[x], "y": g.labels[y], "gradient": grad, "flux": b * phi_p(grad, config.p)})

    result: dict[str, Any] = {
        "labels": list(g.labels),
        "values": values,
        "laplacian": divergence(g, edge_flux(g, f, config.p)).tolist(),
        "edges": edges,
    }
    if config.root is not None:
        result["root_laplacian"] = p_laplacian(g, f, g.index_of(config.root), config.p)

    verified = None
    if config.phi is not None:
        phi = inputs.phi_values(config, g)
        residual = greens_residual(g, f, phi, g.interior, config.p)
        scale = 1.0 + float(abs(f).max(initial=0.0)) ** max(config.p - 1, 0.0) * float(abs(phi).sum())
        result["greens_residual"] = residual
        verified = residual <= (config.tol or GREEN_TOLERANCE) * scale
    return {"result": inputs.finite_or_none(result), "verified": verified, "vertex_values": (g.labels, values)}
