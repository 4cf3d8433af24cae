"""Resolve a RunConfig into graphs, exhaustions and graph functions."""

import math
from typing import Any, Optional

import numpy as np

from pgraph.adapter.persistence.graph_files import load_graph, load_vertex_values
from pgraph.criticality.null_sequence import UFunction
from pgraph.domain.model.config import RunConfig
from pgraph.domain.model.graph import GraphFunction, Label, VertexSubset, WeightedGraph
from pgraph.domain.model.reports import CapacityOptions
from pgraph.exceptions import ConfigError
from pgraph.models import ExhaustibleModel, hardy_function, random_function

DEFAULT_RADII = (4, 8, 16, 32)
TSV_SUFFIXES = (".tsv", ".txt")


def model_of(config: RunConfig) -> ExhaustibleModel:
    if config.model is None:
        raise ConfigError(f"{config.command} requires --model")
    weights = tuple(config.weights) if config.weights else None
    return ExhaustibleModel(family=config.model, potential=config.potential, weights=weights)


def model_radius(config: RunConfig) -> int:
    if config.radius is not None:
        return config.radius
    if config.weights:
        return len(config.weights)
    raise ConfigError("--radius is required")


def radii(config: RunConfig) -> list[int]:
    if config.radii:
        return sorted(set(config.radii))
    if config.model == "weighted_line" and config.weights:
        fitting = [r for r in DEFAULT_RADII if r <= len(config.weights)]
        return fitting or [len(config.weights)]
    return list(DEFAULT_RADII)


def window(config: RunConfig) -> WeightedGraph:
    """The graph of a single-window subcommand, from --graph or --model/--radius."""
    if config.graph is not None:
        fmt = "tsv" if config.graph.suffix.lower() in TSV_SUFFIXES else "json"
        vertices = config.vertices.read_text() if config.vertices is not None else None
        return load_graph(config.graph.read_text(), fmt, vertices)
    return model_of(config).window(model_radius(config))


def root_id(config: RunConfig, g: WeightedGraph) -> int:
    """Dense id of --root, or of the model root, or of the first interior vertex."""
    if config.root is not None:
        return g.index_of(config.root)
    if config.model is not None:
        return g.index_of(model_of(config).root)
    interior = np.flatnonzero(g.interior)
    if interior.size == 0:
        raise ConfigError("the graph has no interior vertex to use as root")
    return int(interior[0])


def root_label(config: RunConfig, model: ExhaustibleModel, smallest: int) -> Label:
    """--root normalized to the label type used by the model windows."""
    if config.root is None:
        return model.root
    g = model.window(smallest)
    return g.labels[g.index_of(config.root)]


def subset(config: RunConfig, g: WeightedGraph, default: Optional[VertexSubset] = None) -> VertexSubset:
    if config.subset:
        return g.subset(config.subset)
    if default is None:
        raise ConfigError(f"{config.command} requires --subset")
    return default


def u_values(config: RunConfig, g: WeightedGraph) -> GraphFunction:
    if config.u == "hardy":
        return hardy_function(g, config.p)
    if config.u == "const":
        return np.full(g.vertex_count, config.u_const)
    if config.u == "file":
        return load_vertex_values(config.u_file.read_text(), g)  # type: ignore[union-attr]
    raise ConfigError(f"{config.command} requires --u")


def u_function(config: RunConfig) -> UFunction:
    """u on every window of an exhaustion."""
    if config.u == "file":
        raise ConfigError("--u file only applies to a single window")
    if config.u is None:
        raise ConfigError(f"{config.command} requires --u")
    return lambda g: u_values(config, g)


def phi_values(config: RunConfig, g: WeightedGraph) -> GraphFunction:
    if config.phi == "random":
        return random_function(g, config.seed)
    if config.phi == "file":
        return load_vertex_values(config.phi_file.read_text(), g)  # type: ignore[union-attr]
    raise ConfigError(f"{config.command} requires --phi")


def capacity_options(config: RunConfig) -> CapacityOptions:
    return CapacityOptions(seed=config.seed)


def finite_or_none(values: Any) -> Any:
    """Replace non-finite floats (undefined operator values) with None, recursively."""
    if isinstance(values, float):
        return values if math.isfinite(values) else None
    if isinstance(values, dict):
        return {key: finite_or_none(value) for key, value in values.items()}
    if isinstance(values, (list, tuple)):
        return [finite_or_none(value) for value in values]
    return values
