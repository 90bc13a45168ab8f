"""Concrete groupoids with decidable morphism equality.

Morphisms are canonical hashable values, so ``==`` is morphism equality.
Composition is diagrammatic: ``compose(m1, m2)`` is "m1 then m2", matching
the order in which a chain traverses its steps.
"""

from __future__ import annotations

import itertools
import re
from typing import Any, Hashable, Iterable, Protocol, Sequence

from .core import ArsError

Morphism = Hashable
Obj = Hashable


class GroupoidError(ArsError):
    pass


class Groupoid(Protocol):
    def objects(self) -> list[Obj]: ...

    def source(self, m: Morphism) -> Obj: ...

    def target(self, m: Morphism) -> Obj: ...

    def identity(self, o: Obj) -> Morphism: ...

    def compose(self, m1: Morphism, m2: Morphism) -> Morphism: ...

    def inverse(self, m: Morphism) -> Morphism: ...

    def parse_morphism(self, literal: Any) -> Morphism: ...

    def format_morphism(self, m: Morphism) -> Any: ...


def is_identity(groupoid: Groupoid, m: Morphism) -> bool:
    return m == groupoid.identity(groupoid.source(m))


class PermutationGroup:
    """Symmetric group on ``degree`` points as a one-object groupoid.

    Internally a permutation is the tuple of images of ``0..degree-1``.
    Literals are one-line notation on ``1..degree`` (``[2, 1, 3]``) or cycle
    notation strings (``"(1 2)(3 4)"``, ``"()"``).
    """

    OBJECT = "*"

    def __init__(self, degree: int):
        if degree < 1:
            raise ValueError("degree must be positive")
        self.degree = degree

    def objects(self) -> list[Obj]:
        return [self.OBJECT]

    def source(self, m) -> Obj:
        return self.OBJECT

    target = source

    def identity(self, o: Obj = OBJECT) -> tuple[int, ...]:
        return tuple(range(self.degree))

    def compose(self, m1, m2):
        return tuple(m2[m1[i]] for i in range(self.degree))

    def inverse(self, m):
        inv = [0] * self.degree
        for i, j in enumerate(m):
            inv[j] = i
        return tuple(inv)

    def morphisms(self) -> Iterable[tuple[int, ...]]:
        return itertools.permutations(range(self.degree))

    def cycle(self, *points: int) -> tuple[int, ...]:
        """The cyclic permutation ``(p1 p2 ... pk)`` on 1-based points."""
        images = list(range(self.degree))
        for a, b in zip(points, points[1:] + points[:1]):
            images[a - 1] = b - 1
        return tuple(images)

    def parse_morphism(self, literal):
        if isinstance(literal, str):
            m = self.identity()
            body = literal.replace(" ", ",")
            for group in re.findall(r"\(([^()]*)\)", body):
                pts = [int(p) for p in group.split(",") if p]
                if any(not 1 <= p <= self.degree for p in pts):
                    raise GroupoidError(f"point out of range in {literal!r}")
                m = self.compose(m, self.cycle(*pts))
            if re.sub(r"\([^()]*\)", "", body).strip(","):
                raise GroupoidError(f"bad cycle notation {literal!r}")
            return m
        if isinstance(literal, list) and sorted(literal) == list(range(1, self.degree + 1)):
            return tuple(x - 1 for x in literal)
        raise GroupoidError(f"bad permutation literal {literal!r}")

    def format_morphism(self, m):
        return [x + 1 for x in m]


def reduce_word(word: Sequence[int]) -> tuple[int, ...]:
    """Freely reduce a word over signed generators by stack cancellation."""
    stack: list[int] = []
    for x in word:
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    return tuple(stack)


class FreeGroupTarget:
    """Free group on ``generators`` letters as a one-object groupoid of reduced words."""

    OBJECT = "*"

    def __init__(self, generators: int):
        self.generators = generators

    def objects(self) -> list[Obj]:
        return [self.OBJECT]

    def source(self, m) -> Obj:
        return self.OBJECT

    target = source

    def identity(self, o: Obj = OBJECT) -> tuple[int, ...]:
        return ()

    def compose(self, m1, m2):
        return reduce_word(tuple(m1) + tuple(m2))

    def inverse(self, m):
        return tuple(-x for x in reversed(m))

    def parse_morphism(self, literal):
        from .instances.freegroup import word_from_str

        if not isinstance(literal, str):
            raise GroupoidError(f"bad word literal {literal!r}")
        w = word_from_str(literal)
        if any(abs(x) > self.generators for x in w):
            raise GroupoidError(f"letter out of range in {literal!r}")
        return reduce_word(w)

    def format_morphism(self, m):
        from .instances.freegroup import word_to_str

        return word_to_str(m)


class TableGroupoid:
    """A finite groupoid given by explicit tables of named morphisms.

    ``morphisms`` maps a name to ``(source, target)``; ``compose`` maps
    ``(m1, m2)`` to the name of "m1 then m2" for every composable pair.
    """

    def __init__(
        self,
        objects: Sequence[Obj],
        morphisms: dict[str, tuple[Obj, Obj]],
        compose: dict[tuple[str, str], str],
        identity: dict[Obj, str],
        inverse: dict[str, str],
    ):
        self._objects = list(objects)
        self._morphisms = dict(morphisms)
        self._compose = dict(compose)
        self._identity = dict(identity)
        self._inverse = dict(inverse)
        problems = self.law_violations()
        if problems:
            raise GroupoidError("; ".join(problems))

    @classmethod
    def cyclic(cls, n: int, obj: Obj = "*") -> "TableGroupoid":
        """The cyclic group of order ``n`` with morphisms named ``"0".."n-1"``."""
        names = [str(i) for i in range(n)]
        return cls(
            [obj],
            {m: (obj, obj) for m in names},
            {(a, b): str((int(a) + int(b)) % n) for a in names for b in names},
            {obj: "0"},
            {a: str(-int(a) % n) for a in names},
        )

    @classmethod
    def from_json(cls, data: Any) -> "TableGroupoid":
        try:
            morphisms = {k: (v["src"], v["dst"]) for k, v in data["morphisms"].items()}
            compose = {}
            for m1, row in data["compose"].items():
                for m2, m in row.items():
                    compose[(m1, m2)] = m
            return cls(data["objects"], morphisms, compose, data["identity"], data["inverse"])
        except (KeyError, TypeError, AttributeError) as exc:
            raise GroupoidError(f"bad groupoid table: {exc!r}") from exc

    def to_json(self) -> dict:
        rows: dict[str, dict[str, str]] = {}
        for (a, b), m in self._compose.items():
            rows.setdefault(a, {})[b] = m
        return {
            "objects": list(self._objects),
            "morphisms": {k: {"src": s, "dst": t} for k, (s, t) in self._morphisms.items()},
            "compose": rows,
            "identity": dict(self._identity),
            "inverse": dict(self._inverse),
        }

    def law_violations(self) -> list[str]:
        out = []
        objs = set(self._objects)
        for name, (s, t) in self._morphisms.items():
            if s not in objs or t not in objs:
                out.append(f"morphism {name!r} has unknown endpoints")
        if out:
            return out
        for o in self._objects:
            i = self._identity.get(o)
            if i is None or self._morphisms.get(i) != (o, o):
                out.append(f"object {o!r} lacks an identity")
        for a, (sa, ta) in self._morphisms.items():
            for b, (sb, tb) in self._morphisms.items():
                if ta != sb:
                    continue
                m = self._compose.get((a, b))
                if m is None or self._morphisms.get(m) != (sa, tb):
                    out.append(f"composite {a!r};{b!r} missing or ill-typed")
        if out:
            return out
        for a, (s, t) in self._morphisms.items():
            if self._compose[(self._identity[s], a)] != a or self._compose[(a, self._identity[t])] != a:
                out.append(f"identity law fails at {a!r}")
            inv = self._inverse.get(a)
            if inv is None or self._morphisms.get(inv) != (t, s):
                out.append(f"morphism {a!r} lacks a typed inverse")
            elif self._compose[(a, inv)] != self._identity[s] or self._compose[(inv, a)] != self._identity[t]:
                out.append(f"inverse law fails at {a!r}")
        for a, b, c in itertools.product(self._morphisms, repeat=3):
            if self._morphisms[a][1] == self._morphisms[b][0] and self._morphisms[b][1] == self._morphisms[c][0]:
                left = self._compose[(self._compose[(a, b)], c)]
                right = self._compose[(a, self._compose[(b, c)])]
                if left != right:
                    out.append(f"associativity fails at {a!r},{b!r},{c!r}")
        return out

    def objects(self) -> list[Obj]:
        return list(self._objects)

    def morphisms(self) -> list[str]:
        return list(self._morphisms)

    def _check(self, m) -> None:
        if m not in self._morphisms:
            raise GroupoidError(f"unknown morphism {m!r}")

    def source(self, m):
        self._check(m)
        return self._morphisms[m][0]

    def target(self, m):
        self._check(m)
        return self._morphisms[m][1]

    def identity(self, o):
        return self._identity[o]

    def compose(self, m1, m2):
        try:
            return self._compose[(m1, m2)]
        except KeyError:
            raise GroupoidError(f"cannot compose {m1!r} with {m2!r}") from None

    def inverse(self, m):
        self._check(m)
        return self._inverse[m]

    def parse_morphism(self, literal):
        if not isinstance(literal, str):
            raise GroupoidError(f"bad morphism literal {literal!r}")
        self._check(literal)
        return literal

    def format_morphism(self, m):
        return m


def groupoid_from_json(data: Any) -> Groupoid:
    """``{"kind": "permutation", "degree": d}``, ``{"kind": "free", "generators": g}``
    or ``{"kind": "table", ...table fields}``."""
    if not isinstance(data, dict):
        raise GroupoidError("groupoid JSON must be an object")
    kind = data.get("kind", "table")
    if kind == "permutation":
        return PermutationGroup(int(data["degree"]))
    if kind == "free":
        return FreeGroupTarget(int(data["generators"]))
    if kind == "table":
        return TableGroupoid.from_json(data)
    raise GroupoidError(f"unknown groupoid kind {kind!r}")


def groupoid_to_json(groupoid: Groupoid) -> dict:
    if isinstance(groupoid, PermutationGroup):
        return {"kind": "permutation", "degree": groupoid.degree}
    if isinstance(groupoid, FreeGroupTarget):
        return {"kind": "free", "generators": groupoid.generators}
    if isinstance(groupoid, TableGroupoid):
        return {"kind": "table", **groupoid.to_json()}
    raise GroupoidError(f"cannot serialise {groupoid!r}")
