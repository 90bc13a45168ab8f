"""Joiners, join search, the Newman/Huet join, and confluence cycles."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .core import (
    BWD,
    FWD,
    ArsError,
    Chain,
    Cycle,
    RewritingSystem,
    Span,
    Step,
    VertexId,
    _closed_or_open,
    chain_of,
    concat,
    fwd,
    invert,
    is_forward,
    span_to_json,
    chain_to_json,
)


class NotLocallyConfluentError(ArsError):
    def __init__(self, span: Span, reason: str = "no common descendant"):
        super().__init__(f"span at {span.apex!r} over {span.left.id!r}, {span.right.id!r}: {reason}")
        self.span = span


class MalformedSpanError(ArsError):
    pass


class FuelExhaustedError(ArsError):
    """Raised when a recursion that terminates on Noetherian systems runs out of fuel."""


@dataclass(frozen=True)
class ExtendedCospan:
    """A valley: two forward chains from the feet of a span to a common vertex."""

    left: Chain
    right: Chain

    def __post_init__(self) -> None:
        if not (is_forward(self.left) and is_forward(self.right)):
            raise MalformedSpanError("cospan legs must be forward chains")
        if self.left.end != self.right.end:
            raise MalformedSpanError(
                f"cospan legs end at {self.left.end!r} and {self.right.end!r}"
            )

    @property
    def meet(self) -> VertexId:
        return self.left.end

    def as_chain(self) -> Chain:
        """Flatten to a chain from the left foot to the right foot."""
        back = tuple([Step(e, BWD) for e, _ in reversed(self.right.steps)])
        return _closed_or_open(self.left.start, self.left.steps + back)

    @property
    def is_empty(self) -> bool:
        return not self.left.steps and not self.right.steps


Joiner = Callable[[Span], ExtendedCospan]


def trivial_cospan(v: VertexId) -> ExtendedCospan:
    return ExtendedCospan(Chain(v), Chain(v))


def _shortest_paths(system: RewritingSystem, start: VertexId, max_depth: int | None) -> dict:
    """Lexicographically least shortest forward path (as edge tuple) to each reachable vertex."""
    best: dict[VertexId, tuple] = {start: ()}
    layer = [start]
    depth = 0
    while layer and (max_depth is None or depth < max_depth):
        depth += 1
        nxt = []
        # layer is sorted by path key, so the first discovery is the least path
        for v in layer:
            for e in sorted(system.outgoing(v), key=lambda e: e.id):
                if e.dst not in best:
                    best[e.dst] = best[v] + (e,)
                    nxt.append(e.dst)
        layer = nxt
    return best


def auto_joiner(system: RewritingSystem, max_depth: int | None = None) -> Joiner:
    """Join spans by breadth-first search from both feet.

    Picks the common descendant minimising total valley length, breaking ties
    by the edge-id sequences. ``max_depth`` bounds each search; without it the
    search runs until the reachable set is exhausted, which is finite for
    Noetherian finitely branching systems.
    """

    def join(span: Span) -> ExtendedCospan:
        b, c = span.left.dst, span.right.dst
        if b == c:
            return trivial_cospan(b)
        from_b = _shortest_paths(system, b, max_depth)
        from_c = _shortest_paths(system, c, max_depth)
        common = from_b.keys() & from_c.keys()
        if not common:
            raise NotLocallyConfluentError(span)

        def key(m):
            pb, pc = from_b[m], from_c[m]
            return (len(pb) + len(pc), tuple(e.id for e in pb), tuple(e.id for e in pc))

        m = min(common, key=key)
        return ExtendedCospan(
            chain_of(b, (fwd(e) for e in from_b[m])),
            chain_of(c, (fwd(e) for e in from_c[m])),
        )

    return join


@dataclass
class ConfluenceReport:
    checked: int = 0
    failures: list[tuple[Span, str]] = field(default_factory=list)
    cospans: list[tuple[Span, ExtendedCospan]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self, system: RewritingSystem) -> list[dict]:
        rows = []
        for span, cospan in self.cospans:
            rows.append({
                "span": span_to_json(system, span),
                "status": "ok",
                "cospan": {
                    "left": chain_to_json(system, cospan.left),
                    "right": chain_to_json(system, cospan.right),
                },
            })
        for span, msg in self.failures:
            rows.append({"span": span_to_json(system, span), "status": "fail", "error": msg})
        return rows


def validate_cospan(span: Span, cospan: object) -> str | None:
    """Describe what is wrong with ``cospan`` as a join of ``span``, or return None."""
    if not isinstance(cospan, ExtendedCospan):
        return f"joiner returned {type(cospan).__name__}, not an ExtendedCospan"
    if cospan.left.start != span.left.dst:
        return f"left leg starts at {cospan.left.start!r}, expected {span.left.dst!r}"
    if cospan.right.start != span.right.dst:
        return f"right leg starts at {cospan.right.start!r}, expected {span.right.dst!r}"
    # forward legs meeting at one vertex are ExtendedCospan invariants
    return None


def check_local_confluence(
    system: RewritingSystem, joiner: Joiner, spans: Iterable[Span], keep_cospans: bool = False
) -> ConfluenceReport:
    report = ConfluenceReport()
    for span in spans:
        report.checked += 1
        try:
            cospan = joiner(span)
        except ArsError as exc:
            report.failures.append((span, str(exc)))
            continue
        problem = validate_cospan(span, cospan)
        if problem is None:
            for leg in (cospan.left, cospan.right):
                for step in leg.steps:
                    try:
                        known = system.edge(step.edge.id)
                    except ArsError:
                        known = None
                    if known != step.edge:
                        problem = f"edge {step.edge.id!r} is not an edge of the system"
                        break
        if problem is not None:
            report.failures.append((span, problem))
        elif keep_cospans:
            report.cospans.append((span, cospan))
    return report


class _Fuel:
    def __init__(self, amount: int):
        if amount <= 0:
            raise ValueError("fuel must be positive")
        self.left = amount

    def burn(self) -> None:
        self.left -= 1
        if self.left < 0:
            raise FuelExhaustedError("newman_join ran out of fuel; the system may not terminate")


def newman_join(
    system: RewritingSystem,
    joiner: Joiner,
    left: Chain,
    right: Chain,
    fuel: int = 100_000,
) -> ExtendedCospan:
    """Join an extended span ``left: a ->* b``, ``right: a ->* c`` by Huet's recursion.

    Peel the first edge off each leg, join that local span, then recurse on the
    left leg against the left half of the local valley, and on the right leg
    against the remainder.
    """
    if left.start != right.start:
        raise MalformedSpanError("extended span legs must share their start")
    if not (is_forward(left) and is_forward(right)):
        raise MalformedSpanError("extended span legs must be forward chains")
    return _newman(joiner, left, right, _Fuel(fuel))


def _newman(joiner: Joiner, left: Chain, right: Chain, fuel: _Fuel) -> ExtendedCospan:
    fuel.burn()
    if not left.steps:
        return ExtendedCospan(right, Chain(right.end))
    if not right.steps:
        return ExtendedCospan(Chain(left.end), left)
    s, t = left.steps[0].edge, right.steps[0].edge
    local = joiner(Span(left.start, s, t))
    problem = validate_cospan(Span(left.start, s, t), local)
    if problem is not None:
        raise NotLocallyConfluentError(Span(left.start, s, t), problem)
    rest_left = Chain(s.dst, left.steps[1:])
    rest_right = Chain(t.dst, right.steps[1:])
    # v ->* b against v ->* x
    p_v = _newman(joiner, rest_left, local.left, fuel)
    # w ->* x ->* y against w ->* c
    p_w = _newman(joiner, concat(local.right, p_v.right), rest_right, fuel)
    return ExtendedCospan(concat(p_v.left, p_w.left), p_w.right)


def confluence_cycle(span: Span, joiner: Joiner) -> Cycle:
    """The closed chain formed by a span and its joining valley, based at the left foot."""
    return _confluence_cycle(span, joiner(span))


def _confluence_cycle(span: Span, cospan: ExtendedCospan) -> Cycle:
    # span.as_chain() followed by invert(cospan.as_chain()), assembled in one go
    back = tuple([Step(e, BWD) for e, _ in reversed(cospan.left.steps)])
    steps = (Step(span.left, BWD), Step(span.right, FWD)) + cospan.right.steps + back
    return Cycle._trusted(span.left.dst, steps)


def spans_at(system: RewritingSystem, v: VertexId) -> list[Span]:
    out: Sequence = system.outgoing(v)
    return [Span(v, s, t) for s in out for t in out]
