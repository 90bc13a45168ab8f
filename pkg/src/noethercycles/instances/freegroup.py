"""Words over signed generators, rewritten by cancelling adjacent inverse letters.

Letters are nonzero integers; ``-x`` is the inverse of ``x``. For display,
generator 1 is ``a``, 2 is ``b`` and so on; inverses are upper case.
"""

from __future__ import annotations

import itertools
import string
from typing import Iterator

from ..confluence import ExtendedCospan, MalformedSpanError, trivial_cospan
from ..core import Chain, Edge, Span, fwd
from .finite import SystemFormatError

Word = tuple[int, ...]


def word_from_str(text: str) -> Word:
    out = []
    for ch in text:
        if ch in string.ascii_lowercase:
            out.append(string.ascii_lowercase.index(ch) + 1)
        elif ch in string.ascii_uppercase:
            out.append(-(string.ascii_uppercase.index(ch) + 1))
        else:
            raise SystemFormatError([f"bad letter {ch!r} in word {text!r}"])
    return tuple(out)


def word_to_str(word: Word) -> str:
    return "".join(
        string.ascii_lowercase[x - 1] if x > 0 else string.ascii_uppercase[-x - 1] for x in word
    )


def redexes(word: Word) -> list[int]:
    return [i for i in range(len(word) - 1) if word[i] == -word[i + 1]]


def cancel_at(word: Word, i: int) -> Word:
    return word[:i] + word[i + 2:]


class FreeGroupSystem:
    """The cancellation relation on words over ``generators`` letters.

    With ``max_len`` the system is restricted to words of at most that length
    and becomes finite; edges only shorten words, so outgoing edges are
    unaffected by the restriction.
    """

    def __init__(self, generators: int, max_len: int | None = None):
        if not 1 <= generators <= 26:
            raise ValueError("generators must be between 1 and 26")
        self.generators = generators
        self.max_len = max_len
        self.finite = max_len is not None

    @property
    def letters(self) -> list[int]:
        return [x for g in range(1, self.generators + 1) for x in (g, -g)]

    def has_vertex(self, w) -> bool:
        return (
            isinstance(w, tuple)
            and all(isinstance(x, int) and 1 <= abs(x) <= self.generators for x in w)
            and (self.max_len is None or len(w) <= self.max_len)
        )

    def outgoing(self, w: Word) -> list[Edge]:
        return [Edge((w, i), w, cancel_at(w, i)) for i in redexes(w)]

    def incoming(self, w: Word) -> list[Edge]:
        if self.max_len is not None and len(w) + 2 > self.max_len:
            return []
        out = []
        for i in range(len(w) + 1):
            for x in self.letters:
                src = w[:i] + (x, -x) + w[i:]
                out.append(Edge((src, i), src, w))
        return sorted(out, key=lambda e: e.id)

    def edge(self, edge_id) -> Edge:
        try:
            w, i = edge_id
        except (TypeError, ValueError):
            raise SystemFormatError([f"bad edge id {edge_id!r}"]) from None
        if not self.has_vertex(w) or not isinstance(i, int) or i not in redexes(w):
            raise SystemFormatError([f"no redex {edge_id!r}"])
        return Edge((w, i), w, cancel_at(w, i))

    def vertices(self) -> Iterator[Word]:
        if self.max_len is None:
            raise SystemFormatError(["unbounded free-group system has infinitely many vertices"])
        for n in range(self.max_len + 1):
            yield from itertools.product(self.letters, repeat=n)

    def edges(self) -> Iterator[Edge]:
        for w in self.vertices():
            yield from self.outgoing(w)

    def format_vertex(self, w: Word) -> str:
        return word_to_str(w)

    def parse_vertex(self, text: str) -> Word:
        return word_from_str(text)

    def format_edge_id(self, edge_id) -> str:
        w, i = edge_id
        return f"{word_to_str(w)}@{i}"

    def parse_edge_id(self, text: str):
        word, sep, pos = text.rpartition("@")
        if not sep or not pos.isdigit():
            raise SystemFormatError([f"bad edge id {text!r}"])
        return (word_from_str(word), int(pos))

    def to_json(self) -> dict:
        return {
            "vertices": [self.format_vertex(w) for w in self.vertices()],
            "edges": [
                {
                    "id": self.format_edge_id(e.id),
                    "src": self.format_vertex(e.src),
                    "dst": self.format_vertex(e.dst),
                }
                for e in self.edges()
            ],
        }


def _one_step(w: Word, i: int) -> Chain:
    # a single forward step out of w is a valid chain by construction
    return Chain._trusted(w, (fwd(Edge((w, i), w, cancel_at(w, i))),))


def fg_joiner(span: Span) -> ExtendedCospan:
    """Critical-pair join for two cancellations in the same word.

    Equal or overlapping redexes leave identical words; disjoint ones are
    closed by cancelling the other redex on each side.
    """
    w = span.apex
    try:
        (wl, i), (wr, j) = span.left.id, span.right.id
    except (TypeError, ValueError):
        raise MalformedSpanError(f"not a free-group span: {span!r}") from None
    if wl != w or wr != w or i not in redexes(w) or j not in redexes(w):
        raise MalformedSpanError(f"not a free-group span: {span!r}")
    if abs(i - j) <= 1:
        # same redex, or x x^-1 x where both cancellations leave x
        return trivial_cospan(span.left.dst)
    b, c = cancel_at(w, i), cancel_at(w, j)
    if i < j:
        return ExtendedCospan(_one_step(b, j - 2), _one_step(c, i))
    return ExtendedCospan(_one_step(b, j), _one_step(c, i - 2))
