"""Splitting a cycle into a confluence cycle and a smaller remainder, iterated.

Each step rotates the cycle so that it starts with a local peak, joins the
peak, and replaces the peak by the joining valley. The rotated cycle is then
the merge of the confluence cycle and the remainder. ``cycle_induction`` folds
a finished trace back into a witness for the original cycle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Generic, Protocol, TypeVar, Union

from .confluence import ExtendedCospan, Joiner, NotLocallyConfluentError, _confluence_cycle, validate_cospan
from .core import (
    ArsError,
    Chain,
    Cycle,
    RewritingSystem,
    Span,
    SpanEmpty,
    SpanFound,
    SpanMonotone,
    VertexId,
    chain_to_json,
    concat,
    find_span,
    invert,
    rotate,
    span_to_json,
)

W = TypeVar("W")


class NonNoetherianError(ArsError):
    """A nonempty monotone cycle: some vertex rewrites to itself."""

    def __init__(self, cycle: Cycle):
        super().__init__(f"monotone cycle of length {len(cycle)} at {cycle.start!r}")
        self.cycle = cycle


class NonTerminationError(ArsError):
    pass


@dataclass(frozen=True)
class DecompStep:
    incoming: Cycle
    rotation: int
    span: Span
    cospan: ExtendedCospan
    confluence_cycle: Cycle
    remainder: Cycle
    tau: Chain

    @property
    def joining_chain(self) -> Chain:
        return self.cospan.as_chain()


@dataclass(frozen=True)
class DecompEmpty:
    vertex: VertexId


@dataclass(frozen=True)
class DecompMonotone:
    cycle: Cycle


DecompResult = Union[DecompEmpty, DecompStep, DecompMonotone]


@dataclass(frozen=True)
class DecompositionTrace:
    input: Cycle
    steps: tuple[DecompStep, ...]
    terminal: VertexId

    def __len__(self) -> int:
        return len(self.steps)


def decompose_step(
    system: RewritingSystem, joiner: Joiner, cycle: Cycle, audit: bool = True
) -> DecompResult:
    """One split of ``cycle`` into a confluence cycle and a remainder.

    With ``audit`` (the default) the emitted step is replayed through
    ``verify_merge_decomposition`` and an ``AssertionError`` signals a bug.
    """
    found = find_span(cycle)
    if isinstance(found, SpanEmpty):
        return DecompEmpty(cycle.start)
    if isinstance(found, SpanMonotone):
        return DecompMonotone(found.cycle)
    assert isinstance(found, SpanFound)
    span = found.span
    try:
        cospan = joiner(span)
    except NotLocallyConfluentError:
        raise
    except ArsError as exc:
        raise NotLocallyConfluentError(span, str(exc)) from exc
    problem = validate_cospan(span, cospan)
    if problem is not None:
        raise NotLocallyConfluentError(span, problem)
    alpha = cospan.as_chain()
    # the rotated cycle is kappa followed by invert(tau); reuse its tail directly
    rest = rotate(cycle, found.rotation).steps[2:]
    step = DecompStep(
        incoming=cycle,
        rotation=found.rotation,
        span=span,
        cospan=cospan,
        confluence_cycle=_confluence_cycle(span, cospan),
        remainder=Cycle._trusted(alpha.start, alpha.steps + rest),
        tau=found.tau,
    )
    if audit and not verify_merge_decomposition(cycle, step):
        raise AssertionError("decomposition step violates the merge equation")
    return step


def default_fuel(cycle: Cycle) -> int:
    return 16 * (len(cycle) + 1) ** 2


def decompose(
    system: RewritingSystem,
    joiner: Joiner,
    cycle: Cycle,
    fuel: int | None = None,
    memo: dict | None = None,
    audit: bool = True,
) -> DecompositionTrace:
    """Iterate ``decompose_step`` until the remainder is empty.

    ``memo`` may be shared between calls with the same system and joiner; it
    maps a cycle to the tail of its trace, so remainders already seen are not
    decomposed again. Traces are identical with or without it. ``audit`` is
    passed on to ``decompose_step``.
    """
    if fuel is None:
        fuel = default_fuel(cycle)
    if fuel <= 0:
        raise ValueError("fuel must be positive")
    steps: list[DecompStep] = []
    current = cycle
    while True:
        if memo is not None and current in memo:
            tail, terminal = memo[current]
            if len(steps) + len(tail) > fuel:
                _out_of_fuel(fuel)
            break
        result = decompose_step(system, joiner, current, audit)
        if isinstance(result, DecompEmpty):
            tail, terminal = (), result.vertex
            break
        if isinstance(result, DecompMonotone):
            raise NonNoetherianError(result.cycle)
        if len(steps) >= fuel:
            _out_of_fuel(fuel)
        steps.append(result)
        current = result.remainder
    if memo is not None:
        suffix = tail
        memo.setdefault(current, (suffix, terminal))
        for step in reversed(steps):
            suffix = (step,) + suffix
            memo.setdefault(step.incoming, (suffix, terminal))
    return DecompositionTrace(cycle, tuple(steps) + tuple(tail), terminal)


def _out_of_fuel(fuel: int):
    raise NonTerminationError(
        f"no empty cycle after {fuel} decomposition steps; the system may not be Noetherian"
    )


def verify_merge_decomposition(cycle: Cycle, step: DecompStep) -> bool:
    """Replay the merge equation of ``step`` against ``cycle`` by literal chain equality."""
    try:
        kappa = step.span.as_chain()
        alpha = step.cospan.as_chain()
        return (
            step.incoming == cycle
            and rotate(cycle, step.rotation) == concat(kappa, invert(step.tau))
            and step.confluence_cycle == concat(kappa, invert(alpha))
            and step.remainder == concat(alpha, invert(step.tau))
        )
    except ArsError:
        return False


class InductionHandlers(Protocol[W]):
    def empty(self, v: VertexId) -> W: ...

    def confluence(self, span: Span, cospan: ExtendedCospan) -> W: ...

    def merge(self, left: W, right: W) -> W: ...

    def rotate(self, w: W) -> W: ...


@dataclass(frozen=True)
class Handlers(Generic[W]):
    """Plain-function bundle satisfying ``InductionHandlers``."""

    empty: Callable[[VertexId], W]
    confluence: Callable[[Span, ExtendedCospan], W]
    merge: Callable[[W, W], W]
    rotate: Callable[[W], W]


def cycle_induction(handlers: InductionHandlers[W], trace: DecompositionTrace) -> W:
    """Fold a trace into a witness for ``trace.input``.

    Steps are consumed last to first: the witness for a step's remainder is
    merged with the witness for its confluence cycle, giving a witness for the
    rotated incoming cycle, which ``L - n`` further rotations carry back.
    """
    w = handlers.empty(trace.terminal)
    for step in reversed(trace.steps):
        w = handlers.merge(handlers.confluence(step.span, step.cospan), w)
        length = len(step.incoming)
        for _ in range((length - step.rotation) % length):
            w = handlers.rotate(w)
    return w


def trace_to_json(system: RewritingSystem, trace: DecompositionTrace) -> dict:
    return {
        "input": chain_to_json(system, trace.input),
        "terminal": system.format_vertex(trace.terminal),
        "steps": [
            {
                "rotation": s.rotation,
                "span": span_to_json(system, s.span),
                "cospan": {
                    "left": chain_to_json(system, s.cospan.left),
                    "right": chain_to_json(system, s.cospan.right),
                },
                "confluence_cycle": chain_to_json(system, s.confluence_cycle),
                "remainder": chain_to_json(system, s.remainder),
            }
            for s in trace.steps
        ],
    }


def trace_to_text(system: RewritingSystem, trace: DecompositionTrace) -> str:
    fv = system.format_vertex
    lines = [f"cycle at {fv(trace.input.start)} of length {len(trace.input)}: {len(trace)} step(s)"]
    for i, s in enumerate(trace.steps):
        lines.append(
            f"  {i}: rotate {s.rotation}, peak {fv(s.span.apex)} -> "
            f"{fv(s.span.left.dst)} | {fv(s.span.right.dst)}, valley length {len(s.joining_chain)}, "
            f"remainder length {len(s.remainder)}"
        )
    lines.append(f"  terminal: empty cycle at {fv(trace.terminal)}")
    return "\n".join(lines)
