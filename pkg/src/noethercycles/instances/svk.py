"""Alternating path lists for a span of groupoids ``B <- A -> C``.

A vertex is a list ``m0, a1, m1, a2, m2, ..., ak, mk`` where the morphisms
alternate between ``B`` and ``C`` (starting on ``side``) and each ``m_j`` runs
from the image of ``a_j`` to the image of ``a_{j+1}`` under the map belonging to
its side. An interior ``m_j`` that is an identity with ``a_j == a_{j+1}``
can be collapsed: ``a_j, m_j, a_{j+1}`` disappear and ``m_{j-1}``, ``m_{j+1}``
are composed.

Vertices are ``(side, morphisms, points)`` triples; list length means the
number of morphisms.
"""

from __future__ import annotations

import json
from collections import defaultdict
from pathlib import Path
from typing import Any, Iterator

from ..confluence import ExtendedCospan, MalformedSpanError, trivial_cospan
from ..core import Chain, Edge, Span, fwd
from ..groupoids import Groupoid, TableGroupoid, groupoid_from_json, groupoid_to_json, is_identity
from .finite import SystemFormatError

SIDES = ("B", "C")
Vertex = tuple[str, tuple, tuple]


def _other(side: str) -> str:
    return "C" if side == "B" else "B"


class SvKSystem:
    def __init__(
        self,
        B: Groupoid,
        C: Groupoid,
        points: list,
        f: dict,
        g: dict,
        max_len: int | None = None,
    ):
        self.groupoids = {"B": B, "C": C}
        self.points = list(points)
        self.maps = {"B": dict(f), "C": dict(g)}
        problems = []
        for side, gpd in self.groupoids.items():
            objs = set(gpd.objects())
            for a in self.points:
                if self.maps[side].get(a) not in objs:
                    problems.append(f"point {a!r} has no object in {side}")
        if problems:
            raise SystemFormatError(problems)
        self.max_len = max_len
        self.finite = max_len is not None
        self._incoming: dict | None = None

    # structure ------------------------------------------------------------

    def side_of(self, v: Vertex, j: int) -> str:
        return v[0] if j % 2 == 0 else _other(v[0])

    def has_vertex(self, v) -> bool:
        try:
            side, ms, xs = v
        except (TypeError, ValueError):
            return False
        if side not in SIDES or not isinstance(ms, tuple) or not isinstance(xs, tuple):
            return False
        if len(ms) == 0 or len(xs) != len(ms) - 1:
            return False
        if self.max_len is not None and len(ms) > self.max_len:
            return False
        if any(a not in self.maps["B"] for a in xs):
            return False
        for j, m in enumerate(ms):
            s = self.side_of(v, j)
            gpd, fmap = self.groupoids[s], self.maps[s]
            try:
                src, tgt = gpd.source(m), gpd.target(m)
            except Exception:
                return False
            if j > 0 and src != fmap[xs[j - 1]]:
                return False
            if j < len(ms) - 1 and tgt != fmap[xs[j]]:
                return False
        return True

    def is_redex(self, v: Vertex, j: int) -> bool:
        side, ms, xs = v
        if not (isinstance(j, int) and 0 < j < len(ms) - 1) or xs[j - 1] != xs[j]:
            return False
        return is_identity(self.groupoids[self.side_of(v, j)], ms[j])

    def redexes(self, v: Vertex) -> list[int]:
        return [j for j in range(1, len(v[1]) - 1) if self.is_redex(v, j)]

    def collapse(self, v: Vertex, j: int) -> Vertex:
        side, ms, xs = v
        gpd = self.groupoids[self.side_of(v, j - 1)]
        merged = gpd.compose(ms[j - 1], ms[j + 1])
        return (side, ms[: j - 1] + (merged,) + ms[j + 2:], xs[: j - 1] + xs[j + 1:])

    def outgoing(self, v: Vertex) -> list[Edge]:
        return [Edge((v, j), v, self.collapse(v, j)) for j in self.redexes(v)]

    def edge(self, edge_id) -> Edge:
        try:
            v, j = edge_id
        except (TypeError, ValueError):
            raise SystemFormatError([f"bad edge id {edge_id!r}"]) from None
        if not self.has_vertex(v) or j not in self.redexes(v):
            raise SystemFormatError([f"no collapse {edge_id!r}"])
        return Edge((v, j), v, self.collapse(v, j))

    # finite enumeration ---------------------------------------------------

    def _morphisms(self, side: str) -> list:
        gpd = self.groupoids[side]
        if not hasattr(gpd, "morphisms"):
            raise SystemFormatError([f"groupoid {side} cannot enumerate its morphisms"])
        return list(gpd.morphisms())

    def vertices(self) -> Iterator[Vertex]:
        if self.max_len is None:
            raise SystemFormatError(["unbounded SvK system has infinitely many vertices"])
        mors = {s: self._morphisms(s) for s in SIDES}
        for side in SIDES:
            for n in range(1, self.max_len + 1):
                yield from self._lists(side, n, mors)

    def _lists(self, side: str, n: int, mors: dict) -> Iterator[Vertex]:
        def extend(ms: tuple, xs: tuple) -> Iterator[Vertex]:
            j = len(ms)
            if j == n:
                yield (side, ms, xs)
                return
            s = side if j % 2 == 0 else _other(side)
            gpd, fmap = self.groupoids[s], self.maps[s]
            for m in mors[s]:
                if j > 0 and gpd.source(m) != fmap[xs[-1]]:
                    continue
                if j == n - 1:
                    yield from extend(ms + (m,), xs)
                    continue
                for a in self.points:
                    if gpd.target(m) == fmap[a]:
                        yield from extend(ms + (m,), xs + (a,))

        yield from extend((), ())

    def edges(self) -> Iterator[Edge]:
        for v in self.vertices():
            yield from self.outgoing(v)

    def incoming(self, v: Vertex) -> list[Edge]:
        if self._incoming is None:
            index = defaultdict(list)
            for e in self.edges():
                index[e.dst].append(e)
            self._incoming = dict(index)
        return list(self._incoming.get(v, ()))

    # text forms -------------------------------------------------------------

    def format_vertex(self, v: Vertex) -> str:
        side, ms, xs = v
        parts = [side]
        for j, m in enumerate(ms):
            gpd = self.groupoids[self.side_of(v, j)]
            parts.append(json.dumps(gpd.format_morphism(m), separators=(",", ":")))
            if j < len(xs):
                parts.append(json.dumps(xs[j]))
        return "|".join(parts)

    def parse_vertex(self, text: str) -> Vertex:
        parts = text.split("|")
        side = parts[0]
        if side not in SIDES or len(parts) % 2 != 0:
            raise SystemFormatError([f"bad SvK list {text!r}"])
        try:
            tokens = [json.loads(p) for p in parts[1:]]
            ms, xs = [], []
            for j, tok in enumerate(tokens):
                if j % 2 == 0:
                    s = side if (j // 2) % 2 == 0 else _other(side)
                    ms.append(self.groupoids[s].parse_morphism(tok))
                else:
                    xs.append(tok)
        except Exception as exc:
            raise SystemFormatError([f"bad SvK list {text!r}: {exc}"]) from exc
        return (side, tuple(ms), tuple(xs))

    def format_edge_id(self, edge_id) -> str:
        v, j = edge_id
        return f"{self.format_vertex(v)}@{j}"

    def parse_edge_id(self, text: str):
        body, sep, pos = text.rpartition("@")
        if not sep or not pos.isdigit():
            raise SystemFormatError([f"bad edge id {text!r}"])
        return (self.parse_vertex(body), int(pos))

    def to_json(self) -> dict:
        return {
            "B": groupoid_to_json(self.groupoids["B"]),
            "C": groupoid_to_json(self.groupoids["C"]),
            "A": list(self.points),
            "f": dict(self.maps["B"]),
            "g": dict(self.maps["C"]),
            "max_len": self.max_len,
        }


def svk_from_json(data: Any) -> SvKSystem:
    try:
        return SvKSystem(
            groupoid_from_json(data["B"]),
            groupoid_from_json(data["C"]),
            data["A"],
            data["f"],
            data["g"],
            data.get("max_len"),
        )
    except (KeyError, TypeError) as exc:
        raise SystemFormatError([f"bad SvK instance: {exc!r}"]) from exc


def load_svk(source: str | Path) -> SvKSystem:
    text = source if isinstance(source, str) and source.lstrip().startswith("{") else Path(source).read_text()
    try:
        return svk_from_json(json.loads(text))
    except json.JSONDecodeError as exc:
        raise SystemFormatError([f"invalid JSON: {exc}"]) from exc


def z2_instance(max_len: int = 6) -> SvKSystem:
    """One-object cyclic groups of order two on both sides, a single point."""
    B = TableGroupoid.cyclic(2, "b")
    C = TableGroupoid.cyclic(2, "c")
    return SvKSystem(B, C, ["x"], {"x": "b"}, {"x": "c"}, max_len)


def svk_joiner(system: SvKSystem):
    """Critical-pair join for two collapses on the same list."""

    def one_step(v: Vertex, j: int) -> Chain:
        # a single forward step out of v is a valid chain by construction
        return Chain._trusted(v, (fwd(Edge((v, j), v, system.collapse(v, j))),))

    def join(span: Span) -> ExtendedCospan:
        v = span.apex
        try:
            (vl, i), (vr, j) = span.left.id, span.right.id
        except (TypeError, ValueError):
            raise MalformedSpanError(f"not an SvK span: {span!r}") from None
        try:
            ok = vl == v and vr == v and system.is_redex(v, i) and system.is_redex(v, j)
            b, c = (system.collapse(v, i), system.collapse(v, j)) if ok else (None, None)
        except Exception:
            ok = False
        if not ok or (b, c) != (span.left.dst, span.right.dst):
            raise MalformedSpanError(f"not an SvK span: {span!r}")
        if abs(i - j) <= 1:
            # equal, or adjacent identities whose collapses coincide
            if b != c:
                raise MalformedSpanError(f"overlapping collapses disagree on {span!r}")
            return trivial_cospan(b)
        # disjoint: each side collapses the other redex; indices left of the
        # first collapse are unchanged, those right of it shift by two
        if i < j:
            return ExtendedCospan(one_step(b, j - 2), one_step(c, i))
        return ExtendedCospan(one_step(b, j), one_step(c, i - 2))

    return join
