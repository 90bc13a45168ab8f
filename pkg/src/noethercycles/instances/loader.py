"""One entry point for every system file format.

A system file is JSON. ``"kind"`` selects the instance:

* absent or ``"finite"``: explicit ``vertices`` and ``edges`` tables;
* ``"freegroup"``: ``generators`` and optional ``max_len``; the explicit tables
  written by the ``freegroup`` command may accompany them and are checked;
* ``"svk"``: groupoid tables ``B`` and ``C``, points ``A``, maps ``f``/``g``.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .finite import FiniteSystem, SystemFormatError, system_from_json
from .freegroup import FreeGroupSystem
from .svk import SvKSystem, svk_from_json


def instance_from_json(data: Any, max_len: int | None = None):
    """Build the system described by ``data``; ``max_len`` overrides a word/list bound."""
    if not isinstance(data, dict):
        raise SystemFormatError(["system JSON must be an object"])
    kind = data.get("kind", "finite")
    if kind == "finite":
        if max_len is not None:
            raise SystemFormatError(["a length bound only applies to free-group and SvK systems"])
        return system_from_json(data)
    if kind == "freegroup":
        return _freegroup_from_json(data, max_len)
    if kind == "svk":
        if max_len is not None:
            data = {**data, "max_len": max_len}
        return svk_from_json(data)
    raise SystemFormatError([f"unknown system kind {kind!r}"])


def _freegroup_from_json(data: dict, max_len: int | None) -> FreeGroupSystem:
    gens = data.get("generators")
    bound = data.get("max_len") if max_len is None else max_len
    if not isinstance(gens, int) or isinstance(gens, bool) or not 1 <= gens <= 26:
        raise SystemFormatError(["'generators' must be an integer between 1 and 26"])
    if bound is not None and (not isinstance(bound, int) or isinstance(bound, bool) or bound < 0):
        raise SystemFormatError(["'max_len' must be a non-negative integer"])
    system = FreeGroupSystem(gens, bound)
    if "vertices" in data or "edges" in data:
        if max_len is not None and max_len != data.get("max_len"):
            raise SystemFormatError(["cannot override the bound of a system with explicit tables"])
        listed = system_from_json({"vertices": data.get("vertices"), "edges": data.get("edges")})
        if bound is None or listed.to_json() != system.to_json():
            raise SystemFormatError(["explicit tables do not match the generated free-group system"])
    return system


def instance_to_json(system) -> dict:
    if isinstance(system, FreeGroupSystem):
        out: dict = {"kind": "freegroup", "generators": system.generators, "max_len": system.max_len}
        if system.finite:
            out.update(system.to_json())
        return out
    if isinstance(system, SvKSystem):
        return {"kind": "svk", **system.to_json()}
    if isinstance(system, FiniteSystem):
        return system.to_json()
    raise SystemFormatError([f"cannot serialise {type(system).__name__}"])


def load_instance(source: str | Path, max_len: int | None = None):
    """Load from a path, or from JSON text when ``source`` starts with ``{``."""
    if isinstance(source, str) and source.lstrip().startswith("{"):
        text = source
    else:
        text = Path(source).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SystemFormatError([f"invalid JSON: {exc}"]) from exc
    return instance_from_json(data, max_len)
