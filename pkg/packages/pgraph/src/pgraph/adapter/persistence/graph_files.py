"""Reading and writing graph documents and per-vertex value files.

Two graph formats are accepted:

- json: {"vertices": [{"id", "m", "c"}...], "edges": [{"x", "y", "b"}...], "interior": [...]}
- tsv: one "x<TAB>y<TAB>b" edge per line, with an optional sidecar vertex
  file of "id<TAB>m<TAB>c[<TAB>interior]" lines

External vertex ids (ints or strings) become labels; dense ids follow the
order of the vertex list (or, for tsv without sidecar, ascending ids).
"""

import csv
import io
import json
from typing import IO, Iterable, Optional, Sequence, Union

from pydantic import BaseModel, Field, ValidationError

from common.logging import get_logger
from pgraph.domain.model.graph import GraphFunction, Label, WeightedGraph
from pgraph.exceptions import GraphParseError, GraphValidationError

logger = get_logger(__name__)

Source = Union[IO[bytes], IO[str], bytes, str]


class VertexRecord(BaseModel):
    id: Label
    m: float = Field(1.0, description="Measure m(x)")
    c: float = Field(0.0, description="Potential c(x)")


class EdgeRecord(BaseModel):
    x: Label
    y: Label
    b: float = Field(..., description="Edge weight b(x, y)")


class GraphDocument(BaseModel):
    vertices: list[VertexRecord] = Field(..., min_length=1)
    edges: list[EdgeRecord] = Field(default_factory=list)
    interior: Optional[list[Label]] = Field(None, description="Interior V; all vertices if omitted")


def _read_text(source: Source) -> str:
    if isinstance(source, bytes):
        return source.decode("utf-8")
    if isinstance(source, str):
        return source
    data = source.read()
    return data.decode("utf-8") if isinstance(data, bytes) else data


def _parse_label(token: str) -> Label:
    try:
        return int(token)
    except ValueError:
        return token


def load_graph(source: Source, format: str = "json", vertices: Optional[Source] = None) -> WeightedGraph:
    """Parse a graph document into a WeightedGraph.

    Args:
        source: byte/text stream or the document content itself
        format: "json" or "tsv"
        vertices: optional sidecar vertex file (tsv only)

    Raises:
        GraphParseError: malformed document, with line or field location
        GraphValidationError: a construction invariant fails, with the offending record
    """
    if format == "json":
        document = _parse_json(_read_text(source))
    elif format == "tsv":
        document = _parse_tsv(_read_text(source), None if vertices is None else _read_text(vertices))
    else:
        raise GraphParseError(f"unknown graph format {format!r}")
    return build_graph(document)


def _parse_json(text: str) -> GraphDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise GraphParseError(f"invalid JSON: {e.msg}", line=e.lineno) from e
    try:
        return GraphDocument.model_validate(raw)
    except ValidationError as e:
        first = e.errors()[0]
        location = ".".join(str(part) for part in first["loc"])
        raise GraphParseError(first["msg"], field=location) from e


def _split_rows(text: str) -> Iterable[tuple[int, list[str]]]:
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield number, stripped.split("\t")


def _number(token: str, line: int, field: str) -> float:
    try:
        return float(token)
    except ValueError as e:
        raise GraphParseError(f"not a number: {token!r}", line=line, field=field) from e


def _parse_tsv(text: str, sidecar: Optional[str]) -> GraphDocument:
    edges = []
    for line, cells in _split_rows(text):
        if len(cells) != 3:
            raise GraphParseError(f"expected 3 columns, got {len(cells)}", line=line)
        edges.append(
            EdgeRecord(x=_parse_label(cells[0]), y=_parse_label(cells[1]), b=_number(cells[2], line, "b"))
        )

    vertex_records: list[VertexRecord] = []
    interior: Optional[list[Label]] = None
    if sidecar is not None:
        flags: list[Label] = []
        has_flags = False
        for line, cells in _split_rows(sidecar):
            if len(cells) not in (3, 4):
                raise GraphParseError(f"expected 3 or 4 columns, got {len(cells)}", line=line)
            label = _parse_label(cells[0])
            vertex_records.append(
                VertexRecord(id=label, m=_number(cells[1], line, "m"), c=_number(cells[2], line, "c"))
            )
            if len(cells) == 4:
                has_flags = True
                if _number(cells[3], line, "interior") != 0:
                    flags.append(label)
        interior = flags if has_flags else None
    else:
        endpoints = {label for edge in edges for label in (edge.x, edge.y)}
        ordered = sorted(
            endpoints, key=lambda label: (1, 0, label) if isinstance(label, str) else (0, label, "")
        )
        vertex_records = [VertexRecord(id=label) for label in ordered]

    if not vertex_records:
        raise GraphParseError("graph has no vertices")
    return GraphDocument(vertices=vertex_records, edges=edges, interior=interior)


def build_graph(document: GraphDocument) -> WeightedGraph:
    labels = [record.id for record in document.vertices]
    index = {label: i for i, label in enumerate(labels)}
    if len(index) != len(labels):
        raise GraphValidationError("duplicate vertex id")

    def lookup(label: Label, record: object) -> int:
        if label not in index:
            raise GraphValidationError("edge endpoint is not a declared vertex", record)
        return index[label]

    edges = [(lookup(e.x, e), lookup(e.y, e), e.b) for e in document.edges]
    interior = None
    if document.interior is not None:
        interior = [lookup(label, label) for label in document.interior]
    graph = WeightedGraph(
        len(labels),
        edges,
        measure=[record.m for record in document.vertices],
        potential=[record.c for record in document.vertices],
        interior=interior,
        labels=labels,
    )
    logger.debug(
        "Loaded graph",
        extra={"vertices": graph.vertex_count, "edges": graph.edge_count},
    )
    return graph


def dump_graph(g: WeightedGraph) -> str:
    """Serialize g to the json graph schema, using its labels as ids."""
    labels = g.labels
    document = GraphDocument(
        vertices=[
            VertexRecord(id=labels[i], m=float(g.measure[i]), c=float(g.potential[i]))
            for i in range(g.vertex_count)
        ],
        edges=[EdgeRecord(x=labels[x], y=labels[y], b=b) for x, y, b in g.edges()],
        interior=[labels[i] for i in range(g.vertex_count) if g.interior[i]],
    )
    return json.dumps(document.model_dump(mode="json"), sort_keys=True, indent=2)


def load_vertex_values(source: Source, g: WeightedGraph) -> GraphFunction:
    """Read a per-vertex function given as "label<TAB>value" (or comma separated) lines.

    Vertices not listed get 0.
    """
    values = [0.0] * g.vertex_count
    for line, raw in enumerate(_read_text(source).splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#") or stripped.lower().startswith("label"):
            continue
        cells = stripped.split("\t") if "\t" in stripped else stripped.split(",")
        if len(cells) != 2:
            raise GraphParseError(f"expected label and value, got {len(cells)} columns", line=line)
        values[g.index_of(_parse_label(cells[0].strip()))] = _number(cells[1].strip(), line, "value")
    return g.function(values)


def vertex_values_csv(labels: Sequence[Label], values: Sequence[float]) -> str:
    """Plot-ready "label,value" CSV."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["label", "value"])
    for label, value in zip(labels, values):
        writer.writerow([label, repr(float(value))])
    return buffer.getvalue()
