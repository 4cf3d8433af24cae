"""Capacity action - minimize h over phi in C_c(V) pinned at the root."""

from typing import Any, Mapping

from pgraph.actions import inputs
from pgraph.criticality.capacity import capacity
from pgraph.domain.model.config import RunConfig


def handle(config: RunConfig) -> Mapping[str, Any]:
    g = inputs.window(config)
    V = inputs.subset(config, g, default=g.interior)
    result = capacity(g, inputs.root_id(config, g), V, config.p, inputs.capacity_options(config))
    return {
        "result": result.model_dump(mode="json"),
        "verified": result.status != "unbounded",
        "vertex_values": (result.labels, result.minimizer),
    }
