import pytest
from hypothesis import given

from noethercycles.core import (
    BWD,
    FWD,
    Chain,
    Cycle,
    Edge,
    InvalidCompositionError,
    MalformedChainError,
    Span,
    SpanEmpty,
    SpanFound,
    SpanMonotone,
    Step,
    bwd,
    chain_from_json,
    chain_to_json,
    concat,
    empty,
    find_span,
    fwd,
    invert,
    is_monotone,
    rotate,
    validate_chain,
    vertex_list,
)
from noethercycles.instances import FreeGroupSystem, word_from_str as w

from strategies import chains, cycles

FG = FreeGroupSystem(1, 6)
E_AA = FG.edge((w("aA"), 0))  # "aA" -> ""
E0 = FG.edge((w("aAa"), 0))  # "aAa" -> "a", cancelling positions 0,1
E1 = FG.edge((w("aAa"), 1))  # "aAa" -> "a", cancelling positions 1,2


def walk_ok(c: Chain) -> bool:
    """Independent endpoint check: replay the steps and compare with what the chain claims."""
    here = c.start
    for s in c.steps:
        src, dst = (s.edge.src, s.edge.dst) if s.dir is FWD else (s.edge.dst, s.edge.src)
        if src != here:
            return False
        here = dst
    return here == c.end


class TestChains:
    def test_malformed_chain_rejected(self):
        with pytest.raises(MalformedChainError):
            Chain(w("a"), (fwd(E_AA),))

    def test_cycle_must_close(self):
        with pytest.raises(MalformedChainError):
            Cycle(w("aA"), (fwd(E_AA),))

    def test_empty_cycle(self):
        e = empty("v")
        assert len(e) == 0 and e.basepoint == "v" and e.is_closed

    @pytest.mark.parametrize("side", ["left", "right"])
    def test_concat_with_empty_is_identity(self, side):
        c = Chain(w("aA"), (fwd(E_AA),))
        got = concat(empty(c.start), c) if side == "left" else concat(c, empty(c.end))
        assert got == c

    def test_concat_builds_cycle_at_aA(self):
        c1 = Chain(w("aA"), (fwd(E_AA),))
        c2 = Chain((), (bwd(E_AA),))
        got = concat(c1, c2)
        assert isinstance(got, Cycle)
        assert got.start == w("aA") and len(got) == 2
        assert walk_ok(got)

    def test_concat_mismatch(self):
        c = Chain(w("aA"), (fwd(E_AA),))
        with pytest.raises(InvalidCompositionError):
            concat(c, c)

    def test_invert_single_step(self):
        got = invert(Chain(w("aA"), (fwd(E_AA),)))
        assert got.start == () and got.steps == (bwd(E_AA),)

    def test_invert_empty(self):
        assert invert(empty("v")) == empty("v")

    def test_invert_two_steps(self):
        e1 = Edge("e1", "x", "y")
        e2 = Edge("e2", "z", "y")
        c = Chain("x", (fwd(e1), bwd(e2)))
        got = invert(c)
        assert got.steps == (fwd(e2), bwd(e1))
        assert got.start == "z" and got.end == "x" and walk_ok(got)

    def test_equality_ignores_class(self):
        assert Chain("v") == Cycle("v")
        assert hash(Chain("v")) == hash(Cycle("v"))

    def test_json_round_trip(self):
        c = Cycle(w("aAa"), (fwd(E0), bwd(E1)))
        data = chain_to_json(FG, c)
        assert data == {"start": "aAa", "steps": [{"edge": "aAa@0", "dir": "fwd"}, {"edge": "aAa@1", "dir": "bwd"}]}
        assert chain_from_json(FG, data) == c

    @pytest.mark.parametrize(
        "data",
        [
            {"start": "aA"},
            {"start": "aA", "steps": [{"edge": "aA@0", "dir": "sideways"}]},
            {"start": "a", "steps": [{"edge": "aA@0", "dir": "fwd"}]},
            {"start": "zz", "steps": []},
        ],
    )
    def test_json_rejects(self, data):
        with pytest.raises(Exception):
            chain_from_json(FG, data)

    def test_validate_chain_rejects_foreign_edge(self):
        fake = Edge((w("aA"), 0), w("aA"), w("a"))
        with pytest.raises(MalformedChainError):
            validate_chain(FG, Chain(w("aA"), (fwd(fake),)))


class TestRotate:
    def test_empty(self):
        assert rotate(empty("a")) == empty("a")

    def test_aA(self):
        c = Cycle(w("aA"), (fwd(E_AA), bwd(E_AA)))
        got = rotate(c)
        assert got == Cycle((), (bwd(E_AA), fwd(E_AA)))

    @given(cycles())
    def test_period(self, sc):
        _, c = sc
        assert rotate(c, len(c)) == c
        r = c
        for _ in range(len(c)):
            r = rotate(r)
        assert r == c

    @given(cycles())
    def test_rotation_commutes_with_vertex_list(self, sc):
        _, c = sc
        vl = vertex_list(c)
        expected = vl[1:] + vl[:1]
        assert vertex_list(rotate(c)) == expected


class TestVertexList:
    def test_empty(self):
        assert vertex_list(empty("a")) == []

    def test_two_cycle(self):
        e = Edge("e", "a0", "a1")
        assert vertex_list(Cycle("a0", (fwd(e), bwd(e)))) == ["a1", "a0"]

    def test_forward_chain(self):
        e1, e2 = Edge("e1", "a", "b"), Edge("e2", "b", "c")
        assert vertex_list(Chain("a", (fwd(e1), fwd(e2)))) == ["b", "c"]


class TestMonotone:
    @pytest.mark.parametrize(
        "dirs, expected", [((), True), ((FWD, FWD), True), ((FWD, BWD), False), ((BWD, BWD), True)]
    )
    def test_cases(self, dirs, expected):
        e = Edge("e", "a", "a")
        assert is_monotone(Chain("a", tuple(Step(e, d) for d in dirs))) is expected


@given(chains(), chains())
def test_chain_laws(sc1, sc2):
    _, c1 = sc1
    _, c2 = sc2
    assert walk_ok(c1)
    assert walk_ok(invert(c1))
    assert invert(invert(c1)) == c1
    if c1.end == c2.start:
        c12 = concat(c1, c2)
        assert walk_ok(c12)
        assert invert(c12) == concat(invert(c2), invert(c1))
        assert vertex_list(c12) == vertex_list(c1) + vertex_list(c2)


@given(chains(max_length=4))
def test_concat_associative(sc):
    _, c = sc
    for i in range(len(c.steps) + 1):
        for j in range(i, len(c.steps) + 1):
            a = Chain(c.start, c.steps[:i])
            b = Chain(a.end, c.steps[i:j])
            d = Chain(b.end, c.steps[j:])
            assert concat(concat(a, b), d) == concat(a, concat(b, d)) == c


class TestFindSpan:
    def test_empty(self):
        assert isinstance(find_span(empty("a")), SpanEmpty)

    def test_aAa(self):
        c = Cycle(w("aAa"), (fwd(E0), bwd(E1)))
        got = find_span(c)
        assert got == SpanFound(1, Span(w("aAa"), E1, E0), empty(w("a")))

    def test_monotone(self, two_cycle):
        c = Cycle("a", (fwd(two_cycle.edge("ab")), fwd(two_cycle.edge("ba"))))
        assert find_span(c) == SpanMonotone(c)

    @given(cycles())
    def test_found_is_minimal_and_shaped(self, sc):
        _, c = sc
        got = find_span(c)
        if len(c) == 0:
            assert isinstance(got, SpanEmpty)
            return
        if is_monotone(c):
            assert isinstance(got, SpanMonotone)
            return
        assert isinstance(got, SpanFound)
        # oracle: the first index where a Bwd step is cyclically followed by a Fwd step
        n = len(c)
        first = min(i for i in range(n) if c.steps[i].dir is BWD and c.steps[(i + 1) % n].dir is FWD)
        assert got.rotation == first
        r = rotate(c, got.rotation)
        assert r.steps[0] == bwd(got.span.left) and r.steps[1] == fwd(got.span.right)
        assert got.tau.start == r.start and got.tau.end == got.span.right.dst
        assert concat(got.span.as_chain(), invert(got.tau)) == r
