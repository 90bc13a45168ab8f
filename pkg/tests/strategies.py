"""Hypothesis strategies and random builders shared by the tests."""

import random

from hypothesis import strategies as st

from noethercycles.core import BWD, FWD, Chain, Cycle, Edge, Step, rotate
from noethercycles.instances import FiniteSystem


@st.composite
def finite_systems(draw, max_vertices=5, max_edges=8, acyclic=False):
    n = draw(st.integers(1, max_vertices))
    vertices = [f"v{i}" for i in range(n)]
    pairs = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
    if acyclic:
        pairs = pairs.filter(lambda p: p[0] < p[1])
    raw = draw(st.lists(pairs, max_size=max_edges)) if n > 1 or not acyclic else []
    edges = [Edge(f"e{i}", vertices[a], vertices[b]) for i, (a, b) in enumerate(raw)]
    return FiniteSystem(vertices, edges)


def neighbour_steps(system, v):
    return [Step(e, FWD) for e in system.outgoing(v)] + [Step(e, BWD) for e in system.incoming(v)]


def random_walk(system, rng: random.Random, start, length: int) -> Chain:
    steps, here = [], start
    for _ in range(length):
        options = neighbour_steps(system, here)
        if not options:
            break
        s = rng.choice(options)
        steps.append(s)
        here = s.target
    return Chain(start, tuple(steps))


@st.composite
def chains(draw, max_length=6, **system_kwargs):
    system = draw(finite_systems(**system_kwargs))
    rng = random.Random(draw(st.integers(0, 2**32 - 1)))
    start = rng.choice(system.vertices())
    return system, random_walk(system, rng, start, draw(st.integers(0, max_length)))


@st.composite
def cycles(draw, max_half=3, **system_kwargs):
    """A random walk, a detour out and back, then the walk retraced, randomly rotated.

    Such cycles are closed by construction but bound no "area"; tests that need
    genuine cycles take them from ``enumerate_cycles`` instead.
    """
    system, c = draw(chains(max_length=max_half, **system_kwargs))
    rng = random.Random(draw(st.integers(0, 2**32 - 1)))
    back = [s.inverted() for s in reversed(c.steps)]
    detour = random_walk(system, rng, c.end, rng.randint(0, max_half))
    steps = c.steps + detour.steps + tuple(s.inverted() for s in reversed(detour.steps)) + tuple(back)
    k = rng.randint(0, max(0, len(steps) - 1))
    return system, rotate(Cycle(c.start, steps), k)
