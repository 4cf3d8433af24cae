"""Liouville action - compare h with the energy of the scaled graph b~ = scale * b."""

from typing import Any, Mapping

from pgraph.actions import inputs
from pgraph.criticality.comparison import liouville_check
from pgraph.domain.model.config import RunConfig


def handle(config: RunConfig) -> Mapping[str, Any]:
    """u~ is taken from the same --u choice as u, evaluated on the comparison windows."""
    model = inputs.model_of(config)
    radii = inputs.radii(config)
    u = inputs.u_function(config)
    verdict = liouville_check(
        model,
        model.scaled(config.tilde_scale),
        u,
        u,
        config.alpha,
        config.beta,
        config.p,
        radii,
        root=inputs.root_label(config, model, radii[0]),
        opts=inputs.capacity_options(config),
    )
    return {"result": verdict.model_dump(mode="json"), "verified": verdict.status == "critical"}
