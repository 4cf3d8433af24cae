"""Null-sequence action - capacity trends over the exhaustion of a model."""

from typing import Any, Mapping

from pgraph.actions import inputs
from pgraph.criticality.comparison import gsr_criticality_transfer, proper_subset_check
from pgraph.criticality.null_sequence import assess_criticality, ground_state_trend, is_monotone, null_sequence_search
from pgraph.domain.model.config import RunConfig


def handle(config: RunConfig) -> Mapping[str, Any]:
    """Dispatch on --check: trend (default), ground-state, proper-subset or transfer."""
    model = inputs.model_of(config)
    radii = inputs.radii(config)
    root = inputs.root_label(config, model, radii[0])
    opts = inputs.capacity_options(config)
    check = config.check or "trend"

    if check == "proper-subset":
        labels = config.subset or []
        report = proper_subset_check(
            model,
            config.p,
            radii,
            subset=lambda g: inputs.subset(config, g),
            u=inputs.u_function(config),
            vertex=root if config.root is not None else None,
            opts=opts,
        )
        return {"result": report.model_dump(mode="json") | {"subset": labels}, "verified": report.holds}

    if check == "transfer":
        transfer = gsr_criticality_transfer(model, inputs.u_function(config), config.p, radii, root, opts)
        return {"result": transfer.model_dump(mode="json"), "verified": transfer.transfers}

    if check == "ground-state":
        evidence = null_sequence_search(model, root, config.alpha, config.p, radii, opts)
        largest = model.window(radii[-1])
        values = dict(zip(largest.labels, inputs.u_values(config, largest).tolist()))
        trend = ground_state_trend(evidence, lambda label: values[label])
        return {
            "result": {"evidence": evidence.model_dump(mode="json"), "trend": trend.model_dump(mode="json")},
            "verified": is_monotone(trend.deviations),
        }

    u = inputs.u_function(config) if config.u is not None else None
    verdict = assess_criticality(
        model, root, config.p, radii, u=u, alpha=config.alpha, samples=config.samples, seed=config.seed, opts=opts
    )
    last = verdict.evidence.steps[-1]
    return {
        "result": verdict.model_dump(mode="json"),
        "verified": verdict.classification != "supercritical",
        "vertex_values": (last.labels, last.values),
    }
