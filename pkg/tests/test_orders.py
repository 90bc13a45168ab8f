import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from noethercycles.core import Cycle, UnsupportedOperationError, empty, fwd, bwd
from noethercycles.instances import FreeGroupSystem, word_from_str as w
from noethercycles.orders import (
    Reachability,
    all_less,
    cycle_step_lt,
    descent_steps,
    list_lt,
    rot_lt,
    rotations,
)
from noethercycles.testkit import brute_list_lt

from strategies import finite_systems

# b and c are below a; nothing else is related
ABC = {("b", "a"), ("c", "a")}


def less_abc(x, y):
    return (x, y) in ABC


def random_strict_order(n: int, pairs):
    """Transitive closure of ``i < j`` pairs with i < j, so the result is a strict order."""
    rel = {(i, j) for i, j in pairs if i < j}
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(rel), repeat=2):
            if b == c and (a, d) not in rel:
                rel.add((a, d))
                changed = True
    return lambda x, y: (x, y) in rel


orders = st.integers(1, 8).flatmap(
    lambda n: st.tuples(
        st.just(n), st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=20)
    )
)


def lists_over(n):
    return st.lists(st.integers(0, n - 1), max_size=6)


class TestAllLess:
    @pytest.mark.parametrize(
        "k, x, expected", [([], "x", True), (["b", "c"], "a", True), (["a"], "a", False), (["b", "a"], "a", False)]
    )
    def test_examples(self, k, x, expected):
        assert all_less(k, x, less_abc) is expected


class TestListLt:
    @pytest.mark.parametrize(
        "k, l, expected",
        [
            ([], ["x"], True),
            (["z", "b", "c"], ["z", "a"], True),
            (["a"], ["a"], False),
            (["b", "c"], ["a"], True),
            (["z", "b"], ["z", "a", "q"], False),
            ([], [], False),
        ],
    )
    def test_examples(self, k, l, expected):
        assert list_lt(k, l, less_abc) is expected
        assert brute_list_lt(k, l, less_abc) is expected

    @given(orders, st.data())
    def test_matches_brute_force(self, order, data):
        n, pairs = order
        less = random_strict_order(n, pairs)
        k = data.draw(lists_over(n))
        l = data.draw(lists_over(n))
        assert list_lt(k, l, less) == brute_list_lt(k, l, less)

    @given(orders, st.data())
    def test_positive_by_construction(self, order, data):
        n, pairs = order
        less = random_strict_order(n, pairs)
        l = data.draw(st.lists(st.integers(0, n - 1), min_size=1, max_size=6))
        i = data.draw(st.integers(0, len(l) - 1))
        below = [y for y in range(n) if less(y, l[i])]
        mid = data.draw(st.lists(st.sampled_from(below), max_size=3)) if below else []
        k = l[:i] + mid + l[i + 1:]
        assert list_lt(k, l, less)


class TestRotLt:
    @pytest.mark.parametrize(
        "k, l, expected",
        [
            ([], ["x"], True),
            (["c", "z", "b"], ["z", "a"], True),
            (["b"], [], False),
            (["a"], ["a"], False),
        ],
    )
    def test_examples(self, k, l, expected):
        assert rot_lt(k, l, less_abc) is expected

    def test_rotation_range(self):
        assert rotations([]) == [[]]
        assert rotations([1, 2, 3]) == [[1, 2, 3], [2, 3, 1], [3, 1, 2]]

    @given(orders, st.data())
    def test_rotation_invariance(self, order, data):
        # a positive list_lt(rot^n k, l) gives rot_lt(k, rot^m l) for every m
        n, pairs = order
        less = random_strict_order(n, pairs)
        l = data.draw(st.lists(st.integers(0, n - 1), min_size=1, max_size=6))
        i = data.draw(st.integers(0, len(l) - 1))
        below = [y for y in range(n) if less(y, l[i])]
        mid = data.draw(st.lists(st.sampled_from(below), max_size=3)) if below else []
        k = l[:i] + mid + l[i + 1:]
        shift = data.draw(st.integers(0, 5))
        k = rotations(k)[shift % len(rotations(k))]
        for m in range(len(l)):
            assert rot_lt(k, l[m:] + l[:m], less)


@given(finite_systems(max_vertices=6, max_edges=10))
def test_reachability_matches_warshall(system):
    vs = system.vertices()
    reach = {(e.src, e.dst) for e in system.edges()}
    for k in vs:
        for i in vs:
            for j in vs:
                if (i, k) in reach and (k, j) in reach:
                    reach.add((i, j))
    r = Reachability(system)
    for x in vs:
        for y in vs:
            assert r.less(x, y) == ((y, x) in reach)


class TestCycleStepLt:
    fg = FreeGroupSystem(1, 4)

    def aAa_cycle(self):
        e0, e1 = self.fg.edge((w("aAa"), 0)), self.fg.edge((w("aAa"), 1))
        return Cycle(w("aAa"), (fwd(e0), bwd(e1)))

    def test_empty_below_aAa_in_two_steps(self):
        # the list [a, aAa] cannot lose both entries in a single replacement
        c = self.aAa_cycle()
        reach = Reachability(self.fg)
        assert not cycle_step_lt(empty(w("a")), c, self.fg, reach)
        assert descent_steps([], [w("a"), w("aAa")], reach.less) == 2

    def test_irreflexive(self):
        c = self.aAa_cycle()
        assert not cycle_step_lt(c, c, self.fg)

    def test_nothing_below_empty(self):
        assert not cycle_step_lt(self.aAa_cycle(), empty(w("a")), self.fg)
        assert not cycle_step_lt(empty(w("")), empty(w("a")), self.fg)

    def test_requires_finite(self):
        with pytest.raises(UnsupportedOperationError):
            cycle_step_lt(empty(()), empty(()), FreeGroupSystem(1))


class TestDescentSteps:
    def test_one_step(self):
        assert descent_steps(["z", "b", "c"], ["z", "a"], less_abc) == 1

    def test_two_steps(self):
        # each step removes at most one entry, so emptying a two-entry list takes two
        less = lambda x, y: (x, y) in {("b", "a"), ("b", "z")}  # noqa: E731
        assert descent_steps([], ["a", "z"], less) == 2
        assert descent_steps(["b"], ["a", "z"], less) == 2
        assert descent_steps(["b", "z"], ["a", "z"], less) == 1
        assert descent_steps(["b"], ["a", "z", "a"], less) is None

    def test_none(self):
        assert descent_steps(["a"], ["a"], less_abc) is None
        assert descent_steps(["q", "q", "q"], ["a"], less_abc, max_steps=2) is None
