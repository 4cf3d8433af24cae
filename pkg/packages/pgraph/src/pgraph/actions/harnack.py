"""Harnack action - local Harnack constant on K, optionally verified against u."""

from typing import Any, Mapping

from pgraph.actions import inputs
from pgraph.criticality.harnack import harnack_constant, harnack_verify, strict_positivity_check
from pgraph.domain.model.config import RunConfig


def handle(config: RunConfig) -> Mapping[str, Any]:
    g = inputs.window(config)
    K = inputs.subset(config, g, default=g.interior)

    if config.check == "positivity":
        report = strict_positivity_check(g, K, inputs.u_values(config, g), config.p)
        return {"result": report.model_dump(mode="json"), "verified": report.strictly_positive}

    result: dict[str, Any] = {
        "harnack": harnack_constant(g, K, config.f_const, config.p).model_dump(mode="json"),
    }
    verified = None
    if config.u is not None:
        verification = harnack_verify(g, K, config.f_const, inputs.u_values(config, g), config.p)
        result["verification"] = verification.model_dump(mode="json")
        verified = verification.holds
    return {"result": result, "verified": verified}
