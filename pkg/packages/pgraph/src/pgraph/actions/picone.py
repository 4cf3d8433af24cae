"""Picone action - h(u phi) - <Hu, u|phi|^p> must be nonnegative."""

from typing import Any, Mapping

from pgraph.actions import inputs
from pgraph.domain.model.config import RunConfig
from pgraph.energy import picone_residual

PICONE_TOLERANCE = 1e-10


def handle(config: RunConfig) -> Mapping[str, Any]:
    g = inputs.window(config)
    residual = picone_residual(g, inputs.u_values(config, g), inputs.phi_values(config, g), config.p)
    return {"result": {"residual": residual}, "verified": residual >= -(config.tol or PICONE_TOLERANCE)}
