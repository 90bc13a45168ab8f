from __future__ import annotations

import json
from collections import defaultdict
from pathlib import Path
from typing import Any, Iterable, Sequence

from ..core import ArsError, Edge, EdgeId, VertexId


class SystemFormatError(ArsError):
    """The input does not describe a valid system. ``problems`` lists every violation."""

    def __init__(self, problems: Sequence[str]):
        super().__init__("; ".join(problems))
        self.problems = list(problems)


class FiniteSystem:
    """Explicit vertex and edge tables. Vertex and edge ids are strings."""

    finite = True

    def __init__(self, vertices: Iterable[VertexId], edges: Iterable[Edge]):
        self._vertices = list(vertices)
        self._edges = list(edges)
        problems = []
        vset = set()
        for v in self._vertices:
            if v in vset:
                problems.append(f"duplicate vertex {v!r}")
            vset.add(v)
        self._by_id: dict[EdgeId, Edge] = {}
        for e in self._edges:
            if e.id in self._by_id:
                problems.append(f"duplicate edge id {e.id!r}")
            self._by_id[e.id] = e
            for end, v in (("src", e.src), ("dst", e.dst)):
                if v not in vset:
                    problems.append(f"edge {e.id!r}: unknown {end} vertex {v!r}")
        if problems:
            raise SystemFormatError(problems)
        self._vset = vset
        self._out: dict[VertexId, list[Edge]] = defaultdict(list)
        self._in: dict[VertexId, list[Edge]] = defaultdict(list)
        for e in self._edges:
            self._out[e.src].append(e)
            self._in[e.dst].append(e)

    def vertices(self) -> list[VertexId]:
        return list(self._vertices)

    def edges(self) -> list[Edge]:
        return list(self._edges)

    def outgoing(self, v: VertexId) -> list[Edge]:
        return list(self._out.get(v, ()))

    def incoming(self, v: VertexId) -> list[Edge]:
        return list(self._in.get(v, ()))

    def has_vertex(self, v: VertexId) -> bool:
        return v in self._vset

    def edge(self, edge_id: EdgeId) -> Edge:
        try:
            return self._by_id[edge_id]
        except KeyError:
            raise SystemFormatError([f"unknown edge {edge_id!r}"]) from None

    def format_vertex(self, v: VertexId) -> str:
        return str(v)

    def parse_vertex(self, text: str) -> VertexId:
        return text

    def format_edge_id(self, edge_id: EdgeId) -> str:
        return str(edge_id)

    def parse_edge_id(self, text: str) -> EdgeId:
        return text

    def to_json(self) -> dict:
        return {
            "vertices": [self.format_vertex(v) for v in self._vertices],
            "edges": [
                {"id": self.format_edge_id(e.id), "src": self.format_vertex(e.src), "dst": self.format_vertex(e.dst)}
                for e in self._edges
            ],
        }


def system_from_json(data: Any) -> FiniteSystem:
    problems = []
    if not isinstance(data, dict):
        raise SystemFormatError(["system JSON must be an object"])
    vertices = data.get("vertices")
    edges = data.get("edges")
    if not isinstance(vertices, list):
        problems.append("'vertices' must be a list")
        vertices = []
    if not isinstance(edges, list):
        problems.append("'edges' must be a list")
        edges = []
    for v in vertices:
        if not isinstance(v, str):
            problems.append(f"vertex {v!r} is not a string")
    parsed = []
    for i, raw in enumerate(edges):
        if not isinstance(raw, dict) or not all(isinstance(raw.get(k), str) for k in ("id", "src", "dst")):
            problems.append(f"edge #{i} needs string fields id, src, dst")
            continue
        parsed.append(Edge(raw["id"], raw["src"], raw["dst"]))
    if problems:
        raise SystemFormatError(problems)
    return FiniteSystem(vertices, parsed)


def load_system(source: str | Path) -> FiniteSystem:
    """Load a system from a path, or from JSON text if ``source`` starts with ``{``."""
    if isinstance(source, str) and source.lstrip().startswith("{"):
        text = source
    else:
        text = Path(source).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SystemFormatError([f"invalid JSON: {exc}"]) from exc
    return system_from_json(data)
