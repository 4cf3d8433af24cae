"""Energy action - evaluate h(f) with its per-edge breakdown."""

from typing import Any, Mapping

from pgraph.actions import inputs
from pgraph.domain.model.config import RunConfig
from pgraph.energy import bracket, energy


def handle(config: RunConfig) -> Mapping[str, Any]:
    g = inputs.window(config)
    f = inputs.u_values(config, g)
    report = energy(g, f, config.p, with_terms=True)
    result: dict[str, Any] = report.model_dump(mode="json")
    result["edges"] = [[g.labels[x], g.labels[y], b] for x, y, b in g.edges()]
    if config.phi is not None:
        result["bracket"] = bracket(g, f, inputs.phi_values(config, g))
    return {"result": result, "verified": None, "vertex_values": (g.labels, f.tolist())}
