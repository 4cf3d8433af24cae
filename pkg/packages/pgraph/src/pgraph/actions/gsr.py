"""GSR action - both sides of the ground state representation and its simplified energies."""

from typing import Any, Mapping

from pgraph.actions import inputs
from pgraph.domain.model.config import RunConfig
from pgraph.energy import corollary_bounds_check, gsr_check, simplified_energy_1, simplified_energy_2, simplified_energy_3

P2_TOLERANCE = 1e-9


def handle(config: RunConfig) -> Mapping[str, Any]:
    """Compare h(u phi) - <Hu, u|phi|^p> with h_u(phi); at p = 2 they agree exactly."""
    g = inputs.window(config)
    u = inputs.u_values(config, g)
    phi = inputs.phi_values(config, g)
    p = config.p

    report = gsr_check(g, u, phi, p)
    corollary = corollary_bounds_check(g, u, phi, p)
    simplified = {"h_u1": simplified_energy_1(g, u, phi, p), "h_u3": simplified_energy_3(g, u, phi, p)}
    if p >= 2:
        simplified["h_u2"] = simplified_energy_2(g, u, phi, p)

    if report.degenerate:
        equivalent = True
    elif report.ratio is None:
        equivalent = False
    elif p == 2:
        equivalent = abs(report.ratio - 1) <= (config.tol or P2_TOLERANCE)
    else:
        equivalent = report.ratio > 0
    result = report.model_dump(mode="json")
    result.update(simplified=simplified, corollary=corollary.model_dump(mode="json"))
    return {"result": result, "verified": equivalent and corollary.holds, "vertex_values": (g.labels, phi.tolist())}
