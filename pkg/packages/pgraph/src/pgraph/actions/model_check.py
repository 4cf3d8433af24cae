"""Model check action - window invariants of a model family and the half-line display."""

import json
from typing import Any, Mapping

import numpy as np

from pgraph.actions import inputs
from pgraph.adapter.persistence.graph_files import dump_graph
from pgraph.domain.model.config import RunConfig
from pgraph.domain.model.graph import WeightedGraph
from pgraph.graph import boundary, degree, is_connected
from pgraph.models import alpha_seq, gsr_display_check, hardy_function, hardy_u, random_function
from pgraph.operators import classify

P2_TOLERANCE = 1e-9


def _nested(small: WeightedGraph, large: WeightedGraph) -> bool:
    """small is a labelled subgraph of large with the same edge weights."""
    if not set(small.labels) <= set(large.labels):
        return False
    ids = [large.index_of(label) for label in small.labels]
    return all(large.weight(ids[x], ids[y]) == b for x, y, b in small.edges())


def _window_summary(g: WeightedGraph, root: int) -> dict[str, Any]:
    return {
        "vertices": g.vertex_count,
        "edges": g.edge_count,
        "interior": int(g.interior.sum()),
        "boundary": int(boundary(g, g.interior).sum()),
        "connected": is_connected(g, np.ones(g.vertex_count, dtype=bool)),
        "root_degree": degree(g, root),
    }


def _half_line(radius: int, config: RunConfig) -> tuple[dict[str, Any], bool]:
    """Hardy function, alpha sequence and the closed-form display on one half-line window."""
    model = inputs.model_of(config)
    g = model.window(radius)
    harmonicity = classify(g, hardy_function(g, config.p), g.interior, config.p)
    report = gsr_display_check(radius, config.p, random_function(g, config.seed))
    if report.degenerate:
        equivalent = True
    elif config.p == 2:
        equivalent = report.ratio is not None and abs(report.ratio - 1) <= (config.tol or P2_TOLERANCE)
    else:
        equivalent = report.ratio is not None and report.ratio > 0
    summary = {
        "hardy_u": [hardy_u(n, config.p) for n in range(radius + 1)],
        "alpha": [alpha_seq(n, config.p) for n in range(1, radius + 1)],
        "hardy_classification": harmonicity.kind.value,
        "display": report.model_dump(mode="json"),
    }
    return summary, harmonicity.is_superharmonic and equivalent and report.corollary_holds


def handle(config: RunConfig) -> Mapping[str, Any]:
    model = inputs.model_of(config)
    radii = inputs.radii(config)
    windows = [model.window(radius) for radius in radii]
    root = model.root

    steps = []
    verified = True
    for k, (radius, g) in enumerate(zip(radii, windows)):
        step: dict[str, Any] = {"radius": radius, **_window_summary(g, g.index_of(root))}
        if k + 1 < len(windows):
            step["nested"] = _nested(g, windows[k + 1])
            verified = verified and step["nested"]
        verified = verified and step["connected"]
        if config.model == "nat_line" and model.potential == 0:
            step["half_line"], holds = _half_line(radius, config)
            verified = verified and holds
        steps.append(step)

    result: dict[str, Any] = {"family": config.model, "root": root, "windows": steps}
    if config.radius is not None:
        result["graph"] = json.loads(dump_graph(model.window(config.radius)))
    return {"result": result, "verified": verified}
