"""Decision procedures for the list order, its rotation-invariant variant, and the cycle measure.

A *base order* is any callable ``less(x, y) -> bool``. The canonical one for a
rewriting system is strict reachability: ``x`` is below ``y`` when ``y`` rewrites
to ``x`` in one or more steps.
"""

from __future__ import annotations

import threading
from collections import deque
from typing import Callable, Sequence

from .core import Cycle, RewritingSystem, VertexId, require_finite, vertex_list

BaseOrder = Callable[[VertexId, VertexId], bool]


def all_less(k: Sequence[VertexId], x: VertexId, less: BaseOrder) -> bool:
    return all(less(y, x) for y in k)


def list_lt(k: Sequence[VertexId], l: Sequence[VertexId], less: BaseOrder) -> bool:
    """True iff ``k`` arises from ``l`` by replacing one element with smaller ones.

    Position ``i`` of ``l`` fixes the split: the prefix must be ``l[:i]`` and the
    suffix ``l[i+1:]``, so only the middle segment of ``k`` is free.
    """
    k, l = list(k), list(l)
    n_suffix_base = len(l) - 1
    if len(k) < n_suffix_base:
        return False
    for i, x in enumerate(l):
        n_suffix = n_suffix_base - i
        if k[:i] != l[:i]:
            break  # longer prefixes cannot match either
        if n_suffix and k[len(k) - n_suffix:] != l[i + 1:]:
            continue
        if all_less(k[i:len(k) - n_suffix], x, less):
            return True
    return False


def rotations(k: Sequence[VertexId]) -> list[list[VertexId]]:
    k = list(k)
    return [k[n:] + k[:n] for n in range(max(1, len(k)))]


def rot_lt(k: Sequence[VertexId], l: Sequence[VertexId], less: BaseOrder) -> bool:
    return any(list_lt(r, l, less) for r in rotations(k))


class Reachability:
    """Strict forward reachability in a rewriting system, memoised per source.

    ``less(x, y)`` holds iff ``y`` reaches ``x`` by a nonempty forward path.
    Safe to share between threads.
    """

    def __init__(self, system: RewritingSystem):
        self.system = system
        self._memo: dict[VertexId, frozenset] = {}
        self._lock = threading.Lock()

    def descendants(self, v: VertexId) -> frozenset:
        with self._lock:
            hit = self._memo.get(v)
        if hit is not None:
            return hit
        seen: set = set()
        queue = deque(e.dst for e in self.system.outgoing(v))
        while queue:
            u = queue.popleft()
            if u in seen:
                continue
            seen.add(u)
            queue.extend(e.dst for e in self.system.outgoing(u))
        result = frozenset(seen)
        with self._lock:
            self._memo.setdefault(v, result)
        return result

    def less(self, x: VertexId, y: VertexId) -> bool:
        return x in self.descendants(y)

    __call__ = less


def cycle_step_lt(
    smaller: Cycle, larger: Cycle, system: RewritingSystem, reach: Reachability | None = None
) -> bool:
    """One step of the cycle measure: compare vertex lists under the rotation order."""
    require_finite(system, "cycle_step_lt")
    reach = reach or Reachability(system)
    return rot_lt(vertex_list(smaller), vertex_list(larger), reach.less)


def _one_step_predecessors(
    target: Sequence[VertexId], l: Sequence[VertexId], less: BaseOrder, max_segment: int
) -> list[tuple]:
    """Lists one step below ``l`` whose replaced segment is drawn from ``target``.

    Candidate middles are contiguous runs of rotations of ``target`` (at most
    ``max_segment`` long) plus the empty run; this is enough to find an
    intermediate for two-step descents where the final list is built from
    pieces of the starting one.
    """
    segments: set[tuple] = {()}
    for r in rotations(target):
        for a in range(len(r)):
            for b in range(a + 1, min(len(r), a + max_segment) + 1):
                segments.add(tuple(r[a:b]))
    ordered = sorted(segments, key=lambda s: (len(s), repr(s)))
    out = []
    l = tuple(l)
    for i, x in enumerate(l):
        for seg in ordered:
            if all_less(seg, x, less):
                out.append(l[:i] + seg + l[i + 1:])
    return out


def descent_steps(
    smaller: Sequence[VertexId], larger: Sequence[VertexId], less: BaseOrder, max_steps: int = 2
) -> int | None:
    """Fewest rotation-order steps (at most ``max_steps``) from ``larger`` down to ``smaller``.

    Returns ``None`` when no chain of that length was found. A step shortens a
    list by at most one, so intermediates longer than ``smaller`` plus the
    remaining steps are never generated.
    """
    frontier = {tuple(larger)}
    for n in range(1, max_steps + 1):
        if any(rot_lt(smaller, m, less) for m in frontier):
            return n
        if n == max_steps:
            break
        remaining = max_steps - n
        nxt: set[tuple] = set()
        for m in frontier:
            max_segment = len(smaller) + remaining - len(m) + 1
            if max_segment < 0:
                continue
            for r in rotations(m):
                nxt.update(_one_step_predecessors(smaller, r, less, max_segment))
        frontier = nxt
    return None
