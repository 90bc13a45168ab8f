"""Relations, oriented chains and cycles, rotation, vertex projection, spans."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Any, Hashable, Iterable, Iterator, NamedTuple, Protocol, Sequence, Union, runtime_checkable

VertexId = Hashable
EdgeId = Hashable


class ArsError(Exception):
    """Base class for all errors raised by this package."""


class InvalidCompositionError(ArsError):
    pass


class MalformedChainError(ArsError):
    pass


class UnsupportedOperationError(ArsError):
    pass


class Dir(enum.Enum):
    FWD = "fwd"
    BWD = "bwd"

    # members are singletons compared by identity; the C-level identity hash
    # keeps hashing of steps and chains cheap
    __hash__ = object.__hash__

    def flipped(self) -> "Dir":
        return Dir.BWD if self is Dir.FWD else Dir.FWD


FWD = Dir.FWD
BWD = Dir.BWD


class Edge(NamedTuple):
    id: EdgeId
    src: VertexId
    dst: VertexId


class Step(NamedTuple):
    edge: Edge
    dir: Dir

    @property
    def origin(self) -> VertexId:
        return self.edge.src if self.dir is FWD else self.edge.dst

    @property
    def target(self) -> VertexId:
        return self.edge.dst if self.dir is FWD else self.edge.src

    def inverted(self) -> "Step":
        return Step(self.edge, BWD if self.dir is FWD else FWD)


def fwd(edge: Edge) -> Step:
    return Step(edge, FWD)


def bwd(edge: Edge) -> Step:
    return Step(edge, BWD)


@dataclass(frozen=True, eq=False, slots=True)
class Chain:
    """A path in the symmetric closure: a start vertex and oriented steps.

    Construction validates that consecutive steps meet.
    """

    start: VertexId
    steps: tuple[Step, ...] = ()

    def __post_init__(self) -> None:
        if not isinstance(self.steps, tuple):
            object.__setattr__(self, "steps", tuple(self.steps))
        here = self.start
        for i, step in enumerate(self.steps):
            if step.origin != here:
                raise MalformedChainError(
                    f"step {i} over edge {step.edge.id!r} leaves {step.origin!r}, "
                    f"but the chain is at {here!r}"
                )
            here = step.target

    # Cycles are chains; equality ignores which of the two classes was built.
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Chain):
            return NotImplemented
        return self.start == other.start and self.steps == other.steps

    def __hash__(self) -> int:
        return hash((self.start, self.steps))

    @property
    def end(self) -> VertexId:
        return self.steps[-1].target if self.steps else self.start

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self) -> Iterator[Step]:
        return iter(self.steps)

    @property
    def is_closed(self) -> bool:
        return self.end == self.start

    def as_cycle(self) -> "Cycle":
        if isinstance(self, Cycle):
            return self
        return Cycle(self.start, self.steps)

    @classmethod
    def _trusted(cls, start: VertexId, steps: tuple[Step, ...]):
        # skips validation; only for steps derived from already valid chains
        obj = object.__new__(cls)
        object.__setattr__(obj, "start", start)
        object.__setattr__(obj, "steps", steps)
        return obj


class Cycle(Chain):
    """A chain whose end vertex is its start vertex (the basepoint)."""

    __slots__ = ()

    def __post_init__(self) -> None:
        super().__post_init__()
        if self.end != self.start:
            raise MalformedChainError(
                f"cycle based at {self.start!r} ends at {self.end!r}"
            )

    @property
    def basepoint(self) -> VertexId:
        return self.start


def empty(v: VertexId) -> Cycle:
    return Cycle(v, ())


def chain_of(start: VertexId, steps: Iterable[Step]) -> Chain:
    """Validated chain; closed chains come back as ``Cycle``."""
    c = Chain(start, tuple(steps))
    return _closed_or_open(c.start, c.steps)


def _closed_or_open(start: VertexId, steps: tuple[Step, ...]) -> Chain:
    end = steps[-1].target if steps else start
    return (Cycle if end == start else Chain)._trusted(start, steps)


def concat(c1: Chain, c2: Chain) -> Chain:
    if c1.end != c2.start:
        raise InvalidCompositionError(
            f"cannot compose chain ending at {c1.end!r} with chain starting at {c2.start!r}"
        )
    return _closed_or_open(c1.start, c1.steps + c2.steps)


def invert(c: Chain) -> Chain:
    return _closed_or_open(c.end, tuple([Step(s[0], BWD if s[1] is FWD else FWD) for s in reversed(c.steps)]))


def rotate(cycle: Cycle, times: int = 1) -> Cycle:
    """Move the first step to the end, ``times`` times."""
    n = len(cycle.steps)
    if n == 0:
        return cycle
    k = times % n
    if k == 0:
        return cycle
    steps = cycle.steps[k:] + cycle.steps[:k]
    return Cycle._trusted(steps[0].origin, steps)


def vertex_list(c: Chain) -> list[VertexId]:
    """Endpoints of every step, in order. The start vertex is not listed."""
    return [s.target for s in c.steps]


def is_monotone(c: Chain) -> bool:
    return len({s.dir for s in c.steps}) <= 1


def is_forward(c: Chain) -> bool:
    for s in c.steps:
        if s[1] is not FWD:
            return False
    return True


@dataclass(frozen=True)
class Span:
    """A local peak: two edges leaving the same apex."""

    apex: VertexId
    left: Edge
    right: Edge

    def __post_init__(self) -> None:
        if self.left.src != self.apex or self.right.src != self.apex:
            raise MalformedChainError(
                f"span edges {self.left.id!r}, {self.right.id!r} do not both leave {self.apex!r}"
            )

    def as_chain(self) -> Chain:
        """The two-step chain left foot -> apex -> right foot."""
        return chain_of(self.left.dst, (bwd(self.left), fwd(self.right)))


@dataclass(frozen=True)
class SpanEmpty:
    pass


@dataclass(frozen=True)
class SpanFound:
    rotation: int
    span: Span
    tau: Chain


@dataclass(frozen=True)
class SpanMonotone:
    """A nonempty cycle with every step in one direction: the relation loops."""

    cycle: Cycle


SpanSearch = Union[SpanEmpty, SpanFound, SpanMonotone]


def find_span(cycle: Cycle) -> SpanSearch:
    """Locate the first backward step that is immediately followed by a forward one.

    Scans rotations from the basepoint. A rotated cycle ``Bwd s, Fwd t, rest``
    yields the span ``(apex; s, t)`` and ``tau = invert(rest)``. A nonempty
    cycle without such an adjacency has all its steps in one direction.
    """
    steps = cycle.steps
    n = len(steps)
    if n == 0:
        return SpanEmpty()
    for i in range(n):
        a, b = steps[i], steps[(i + 1) % n]
        if a[1] is BWD and b[1] is FWD:
            rest = steps[i + 2:] + steps[:i] if i + 2 <= n else steps[1:i]
            tau = invert(Chain._trusted(b[0].dst, rest))
            return SpanFound(i, Span(a[0].src, a[0], b[0]), tau)
    return SpanMonotone(cycle)


class RewritingSystem(Protocol):
    """Per-vertex access to a (finitely branching) relation.

    Finite systems additionally set ``finite = True`` and implement
    ``vertices()`` and ``edges()``.
    """

    finite: bool

    def outgoing(self, v: VertexId) -> Sequence[Edge]: ...

    def incoming(self, v: VertexId) -> Sequence[Edge]: ...

    def has_vertex(self, v: VertexId) -> bool: ...

    def edge(self, edge_id: EdgeId) -> Edge: ...

    def format_vertex(self, v: VertexId) -> str: ...

    def parse_vertex(self, text: str) -> VertexId: ...

    def format_edge_id(self, edge_id: EdgeId) -> str: ...

    def parse_edge_id(self, text: str) -> EdgeId: ...


def require_finite(system: Any, what: str) -> None:
    if not getattr(system, "finite", False):
        raise UnsupportedOperationError(f"{what} needs a finite system")


def validate_chain(system: RewritingSystem, c: Chain) -> None:
    """Raise unless every vertex and edge of ``c`` belongs to ``system``."""
    if not system.has_vertex(c.start):
        raise MalformedChainError(f"unknown vertex {c.start!r}")
    for step in c.steps:
        if system.edge(step.edge.id) != step.edge:
            raise MalformedChainError(f"edge {step.edge.id!r} does not match the system")


def span_sort_key(span: Span) -> tuple:
    return (span.left.id, span.right.id)


# JSON ------------------------------------------------------------------------


def chain_to_json(system: RewritingSystem, c: Chain) -> dict:
    return {
        "start": system.format_vertex(c.start),
        "steps": [
            {"edge": system.format_edge_id(s.edge.id), "dir": s.dir.value} for s in c.steps
        ],
    }


def chain_from_json(system: RewritingSystem, data: Any) -> Chain:
    if not isinstance(data, dict) or "start" not in data or "steps" not in data:
        raise MalformedChainError("chain JSON needs 'start' and 'steps'")
    if not isinstance(data["start"], str) or not isinstance(data["steps"], list):
        raise MalformedChainError("chain JSON: 'start' must be a string, 'steps' a list")
    start = system.parse_vertex(data["start"])
    if not system.has_vertex(start):
        raise MalformedChainError(f"unknown vertex {data['start']!r}")
    steps = []
    for raw in data["steps"]:
        if not isinstance(raw, dict) or raw.get("dir") not in ("fwd", "bwd") or not isinstance(raw.get("edge"), str):
            raise MalformedChainError(f"bad step {raw!r}")
        steps.append(Step(system.edge(system.parse_edge_id(raw["edge"])), Dir(raw["dir"])))
    return chain_of(start, steps)


def span_to_json(system: RewritingSystem, span: Span) -> dict:
    return {
        "apex": system.format_vertex(span.apex),
        "left": system.format_edge_id(span.left.id),
        "right": system.format_edge_id(span.right.id),
    }
