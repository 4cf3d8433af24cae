"""Hardy action - Hardy weight of a positive superharmonic u with its test battery."""

from typing import Any, Mapping

from pgraph.actions import inputs
from pgraph.criticality.hardy import hardy_witness
from pgraph.domain.model.config import RunConfig
from pgraph.operators import classify


def handle(config: RunConfig) -> Mapping[str, Any]:
    g = inputs.window(config)
    V = inputs.subset(config, g, default=g.interior)
    u = inputs.u_values(config, g)
    harmonicity = classify(g, u, V, config.p, config.tol)
    witness = hardy_witness(g, u, V, config.p, samples=config.samples, seed=config.seed)
    return {
        "result": {"classification": harmonicity.model_dump(mode="json"), "witness": witness.model_dump(mode="json")},
        "verified": witness.verified,
        "vertex_values": (g.labels, witness.weights),
    }
