"""Groupoid-valued edge labellings and the check that confluence cycles suffice.

A labelling sends each vertex to an object and each edge to a morphism
between the objects of its endpoints. It is *coherent* when every cycle
evaluates to an identity. For a Noetherian, locally confluent system it is
enough to check the confluence cycles of a chosen joiner; ``explain_cycle``
turns that into a per-cycle certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Iterable, Mapping

from .confluence import Joiner, _confluence_cycle, confluence_cycle
from .core import ArsError, Chain, Cycle, Edge, FWD, RewritingSystem, Span, VertexId, rotate, span_to_json
from .groupoids import (
    FreeGroupTarget,
    Groupoid,
    GroupoidError,
    Morphism,
    PermutationGroup,
    TableGroupoid,
    groupoid_from_json,
    is_identity,
    reduce_word,
)
from .induction import DecompositionTrace, Handlers, cycle_induction, decompose

__all__ = [
    "Certified",
    "Counterexample",
    "EdgeLabelling",
    "FreeGroupTarget",
    "IdentityProof",
    "LocalizedFailure",
    "PermutationGroup",
    "TableGroupoid",
    "UnlabelledEdgeError",
    "check_confluence_coherence",
    "eval_chain",
    "explain_cycle",
    "free_group_letter_labelling",
    "labelling_from_json",
    "reduce_word",
]


class UnlabelledEdgeError(ArsError):
    pass


@dataclass(frozen=True)
class EdgeLabelling:
    """Objects for vertices and morphisms for edges, both as callables."""

    groupoid: Groupoid
    object_of: Callable[[VertexId], Any]
    morphism_of: Callable[[Edge], Morphism]

    def label(self, e: Edge) -> Morphism:
        try:
            m = self.morphism_of(e)
        except KeyError:
            raise UnlabelledEdgeError(f"edge {e.id!r} has no label") from None
        return m

    def violations(self, edges: Iterable[Edge]) -> list[str]:
        """Edges whose morphism does not run between the objects of their endpoints."""
        g = self.groupoid
        out = []
        for e in edges:
            try:
                m = self.label(e)
                if g.source(m) != self.object_of(e.src) or g.target(m) != self.object_of(e.dst):
                    out.append(f"edge {e.id!r}: label is not a morphism {e.src!r} -> {e.dst!r}")
            except (UnlabelledEdgeError, GroupoidError, KeyError) as exc:
                out.append(f"edge {e.id!r}: {exc}")
        return out


def table_labelling(groupoid: Groupoid, objects: Mapping, morphisms: Mapping) -> EdgeLabelling:
    return EdgeLabelling(groupoid, objects.__getitem__, lambda e: morphisms[e.id])


def eval_chain(labelling: EdgeLabelling, c: Chain) -> Morphism:
    g = labelling.groupoid
    m = g.identity(labelling.object_of(c.start))
    for step in c.steps:
        x = labelling.label(step.edge)
        m = g.compose(m, x if step.dir is FWD else g.inverse(x))
    return m


def is_identity_chain(labelling: EdgeLabelling, c: Chain) -> bool:
    return is_identity(labelling.groupoid, eval_chain(labelling, c))


@dataclass(frozen=True)
class Certified:
    spans_checked: int


@dataclass(frozen=True)
class Counterexample:
    span: Span
    morphism: Morphism
    cycle: Cycle


def check_confluence_coherence(
    system: RewritingSystem, joiner: Joiner, labelling: EdgeLabelling, spans: Iterable[Span]
) -> Certified | Counterexample:
    """Evaluate the confluence cycle of every span; report the first non-identity in input order."""
    n = 0
    for span in spans:
        n += 1
        cycle = confluence_cycle(span, joiner)
        m = eval_chain(labelling, cycle)
        if not is_identity(labelling.groupoid, m):
            return Counterexample(span, m, cycle)
    return Certified(n)


@dataclass(frozen=True)
class IdentityProof:
    trace: DecompositionTrace


@dataclass(frozen=True)
class LocalizedFailure:
    span: Span
    morphism: Morphism
    step_index: int


def explain_cycle(
    system: RewritingSystem,
    joiner: Joiner,
    labelling: EdgeLabelling,
    cycle: Cycle,
    fuel: int | None = None,
) -> IdentityProof | LocalizedFailure:
    trace = decompose(system, joiner, cycle, fuel)
    g = labelling.groupoid
    for i, step in enumerate(trace.steps):
        m = eval_chain(labelling, step.confluence_cycle)
        if not is_identity(g, m):
            return LocalizedFailure(step.span, m, i)
    return IdentityProof(trace)


def identity_handlers(labelling: EdgeLabelling) -> Handlers[bool]:
    """Induction handlers whose witness is "this cycle evaluates to an identity".

    Merging two identity cycles along a shared chain yields an identity cycle
    and conjugation preserves identities, so the boolean witnesses compose.
    """
    g = labelling.groupoid

    def confluence(span, cospan):
        return is_identity(g, eval_chain(labelling, _confluence_cycle(span, cospan)))

    return Handlers(
        empty=lambda v: True,
        confluence=confluence,
        merge=lambda a, b: a and b,
        rotate=lambda w: w,
    )


def evaluation_handlers(labelling: EdgeLabelling) -> Handlers[tuple[Cycle, Morphism]]:
    """Handlers carrying ``(cycle, eval_chain(cycle))`` through the induction.

    A confluence cycle ``kappa . alpha^-1`` and a remainder ``alpha . tau^-1``
    share their basepoint, so the merged cycle ``kappa . tau^-1`` evaluates to
    the composite of the two. Rotation conjugates by the first step's label.
    """
    g = labelling.groupoid

    def empty(v):
        return Cycle(v), g.identity(labelling.object_of(v))

    def confluence(span, cospan):
        c = _confluence_cycle(span, cospan)
        return c, eval_chain(labelling, c)

    def merge(conf, rem):
        (c1, m1), (c2, m2) = conf, rem
        shared = len(c1) - 2
        merged = Cycle(c1.start, c1.steps[:2] + c2.steps[shared:])
        return merged, g.compose(m1, m2)

    def rotate_witness(w):
        c, m = w
        if not c.steps:
            return w
        first = eval_chain(labelling, Chain(c.start, c.steps[:1]))
        return rotate(c), g.compose(g.compose(g.inverse(first), m), first)

    return Handlers(empty=empty, confluence=confluence, merge=merge, rotate=rotate_witness)


def certify_by_induction(labelling: EdgeLabelling, trace: DecompositionTrace) -> bool:
    return cycle_induction(identity_handlers(labelling), trace)


def free_group_letter_labelling(generators: int) -> EdgeLabelling:
    """Label free-group cancellations in the free group on the same generators.

    Each word is sent to its letter content with signs forgotten, and an edge
    ``w -> w'`` gets ``content(w)^-1 content(w')``. Every label of a
    cancellation is a nontrivial word, and chains telescope.
    """
    target = FreeGroupTarget(generators)

    def content(w) -> tuple[int, ...]:
        return reduce_word(tuple(abs(x) for x in w))

    def morphism_of(e: Edge):
        return target.compose(target.inverse(content(e.src)), content(e.dst))

    return EdgeLabelling(target, lambda v: target.OBJECT, morphism_of)


def labelling_from_json(system: RewritingSystem, data: Any) -> EdgeLabelling:
    """``{"groupoid": {...}, "objects": {vertex: obj}, "morphisms": {edge: literal}}``.

    For one-object groupoids ``objects`` may be omitted.
    """
    if not isinstance(data, dict) or "groupoid" not in data or "morphisms" not in data:
        raise GroupoidError("labelling JSON needs 'groupoid' and 'morphisms'")
    g = groupoid_from_json(data["groupoid"])
    if "objects" in data:
        objects = {system.parse_vertex(k): v for k, v in data["objects"].items()}
        object_of = objects.__getitem__
    else:
        objs = g.objects()
        if len(objs) != 1:
            raise GroupoidError("'objects' is required for groupoids with several objects")
        object_of = lambda v, _o=objs[0]: _o  # noqa: E731
    morphisms = {
        system.parse_edge_id(k): g.parse_morphism(lit) for k, lit in data["morphisms"].items()
    }
    return EdgeLabelling(g, object_of, lambda e: morphisms[e.id])


def verdict_to_json(system: RewritingSystem, labelling: EdgeLabelling, verdict) -> dict:
    if isinstance(verdict, Certified):
        return {"verdict": "certified", "spans_checked": verdict.spans_checked}
    return {
        "verdict": "counterexample",
        "span": span_to_json(system, verdict.span),
        "morphism": labelling.groupoid.format_morphism(verdict.morphism),
    }

