"""Brute-force oracles kept independent of the decision procedures they check."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator, Sequence

from .core import (
    BWD,
    FWD,
    Cycle,
    RewritingSystem,
    Span,
    Step,
    VertexId,
    require_finite,
)
from .groupoids import is_identity


@dataclass(frozen=True)
class EnumerationBound:
    max_length: int
    basepoints: tuple | None = None
    max_vertices: int | None = None

    def __post_init__(self) -> None:
        if self.max_length < 0:
            raise ValueError("max_length must be non-negative")
        if self.max_vertices is not None and self.max_vertices <= 0:
            raise ValueError("max_vertices must be positive")


def _neighbour_steps(system: RewritingSystem, v: VertexId) -> list[Step]:
    steps = [Step(e, FWD) for e in system.outgoing(v)]
    steps += [Step(e, BWD) for e in system.incoming(v)]
    return steps


def _distances(system: RewritingSystem, source: VertexId, limit: int) -> dict:
    """Undirected hop distance from ``source``, explored up to ``limit``."""
    dist = {source: 0}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        if dist[v] >= limit:
            continue
        for s in _neighbour_steps(system, v):
            if s.target not in dist:
                dist[s.target] = dist[v] + 1
                queue.append(s.target)
    return dist


def iter_cycles(system: RewritingSystem, bound: EnumerationBound | int) -> Iterator[Cycle]:
    """Every closed chain of length at most the bound, shortest first.

    Lengths are visited in increasing order and, within a length, basepoints
    in system order; each pass is a depth-first search in both orientations
    where branches that cannot return to the basepoint in the remaining budget
    are cut using hop distances.
    """
    require_finite(system, "cycle enumeration")
    if isinstance(bound, int):
        bound = EnumerationBound(bound)
    basepoints = list(bound.basepoints if bound.basepoints is not None else system.vertices())
    if bound.max_vertices is not None:
        basepoints = basepoints[: bound.max_vertices]
    cache: dict[VertexId, list[Step]] = {}
    distances: dict[VertexId, dict] = {}

    def nbrs(v):
        hit = cache.get(v)
        if hit is None:
            hit = cache[v] = _neighbour_steps(system, v)
        return hit

    for base in basepoints:
        yield Cycle(base)
    for length in range(1, bound.max_length + 1):
        for base in basepoints:
            dist = distances.get(base)
            if dist is None:
                dist = distances[base] = _distances(system, base, bound.max_length // 2 + 1)
            yield from _closed_walks(base, length, nbrs, dist)


def _closed_walks(base, length: int, nbrs, dist: dict) -> Iterator[Cycle]:
    path: list[Step] = []

    def walk(v) -> Iterator[Cycle]:
        budget = length - len(path) - 1
        for s in nbrs(v):
            w = s.target
            d = dist.get(w)
            if d is None or d > budget:
                continue
            path.append(s)
            if budget == 0:
                if w == base:
                    yield Cycle(base, tuple(path))
            else:
                yield from walk(w)
            path.pop()

    return walk(base)


def enumerate_cycles(system: RewritingSystem, bound: EnumerationBound | int) -> list[Cycle]:
    out = []
    seen = set()
    for c in iter_cycles(system, bound):
        if c not in seen:
            seen.add(c)
            out.append(c)
    return out


def enumerate_spans(system: RewritingSystem, vertices: Sequence[VertexId] | None = None) -> list[Span]:
    """All ordered pairs of outgoing edges, including the diagonal, per vertex."""
    if vertices is None:
        require_finite(system, "span enumeration")
        vertices = system.vertices()
    out = []
    for v in vertices:
        edges = system.outgoing(v)
        out.extend(Span(v, s, t) for s in edges for t in edges)
    return out


def brute_list_lt(k: Sequence, l: Sequence, less) -> bool:
    """Try every position of ``l`` and every three-way split of ``k``."""
    k, l = list(k), list(l)
    for i in range(len(l)):
        x = l[i]
        for a in range(len(k) + 1):
            for b in range(a, len(k) + 1):
                prefix, mid, suffix = k[:a], k[a:b], k[b:]
                if prefix == l[:i] and suffix == l[i + 1:] and all(less(y, x) for y in mid):
                    return True
    return False


@dataclass(frozen=True)
class BruteCoherence:
    ok: bool
    cycles_checked: int
    failing_cycle: Cycle | None = None

    def __bool__(self) -> bool:
        return self.ok


def brute_coherence(system: RewritingSystem, labelling, bound: EnumerationBound | int) -> BruteCoherence:
    """Evaluate every enumerated cycle directly; stop at the first non-identity."""
    from .coherence import eval_chain

    n = 0
    for c in iter_cycles(system, bound):
        n += 1
        if not is_identity(labelling.groupoid, eval_chain(labelling, c)):
            return BruteCoherence(False, n, c)
    return BruteCoherence(True, n)
