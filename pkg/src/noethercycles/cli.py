"""Command-line interface: systems and cycles in as JSON, reports out.

Exit codes: 0 success, 1 property counterexample, 2 input error,
3 fuel exhaustion or non-Noetherian evidence, 4 oracle disagreement.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from .coherence import (
    Certified,
    eval_chain,
    check_confluence_coherence,
    free_group_letter_labelling,
    labelling_from_json,
    verdict_to_json,
)
from .confluence import (
    FuelExhaustedError,
    NotLocallyConfluentError,
    auto_joiner,
    check_local_confluence,
)
from .core import ArsError, Cycle, chain_from_json, chain_to_json, span_to_json
from .groupoids import GroupoidError
from .induction import NonNoetherianError, NonTerminationError, decompose, trace_to_json, trace_to_text
from .instances import FreeGroupSystem, SvKSystem, fg_joiner, svk_joiner
from .instances.loader import instance_from_json, instance_to_json
from .testkit import EnumerationBound, brute_coherence, enumerate_cycles, enumerate_spans

EXIT_OK = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_INPUT = 2
EXIT_NONTERMINATION = 3
EXIT_DISAGREEMENT = 4


class InputError(Exception):
    """Bad command-line input; reported on stderr with exit code 2."""


def _read_json(source: str) -> Any:
    """Read JSON from a path, ``-`` for stdin, or inline text starting with ``{``."""
    if source == "-":
        text = sys.stdin.read()
    elif source.lstrip().startswith("{"):
        text = source
    else:
        try:
            text = Path(source).read_text(encoding="utf-8")
        except OSError as exc:
            raise InputError(f"cannot read {source}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in {source}: {exc}") from exc


def _load_system(args):
    return instance_from_json(_read_json(args.system), getattr(args, "max_len", None))


def _joiner(system, name: str | None):
    if name is None:
        name = "fg" if isinstance(system, FreeGroupSystem) else "svk" if isinstance(system, SvKSystem) else "auto"
    if name == "auto":
        return auto_joiner(system)
    if name == "fg":
        if not isinstance(system, FreeGroupSystem):
            raise InputError("--joiner fg needs a free-group system")
        return fg_joiner
    if not isinstance(system, SvKSystem):
        raise InputError("--joiner svk needs an SvK system")
    return svk_joiner(system)


def _require_finite(system, flag: str = "--max-len") -> None:
    if not getattr(system, "finite", False):
        raise InputError(f"this system is infinite; bound it with {flag}")


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, ensure_ascii=False))
    else:
        print(text)


# commands -----------------------------------------------------------------


def cmd_check(args) -> int:
    system = _load_system(args)
    _require_finite(system)
    joiner = _joiner(system, args.joiner)
    report = check_local_confluence(system, joiner, enumerate_spans(system))
    failures = [
        {"span": span_to_json(system, span), "error": msg} for span, msg in report.failures
    ]
    lines = [f"checked {report.checked} span(s): {len(report.failures)} failure(s)"]
    for row in failures:
        s = row["span"]
        lines.append(f"  not joined: {s['apex']} via {s['left']} / {s['right']}: {row['error']}")
    _emit(args, {"ok": report.ok, "checked": report.checked, "failures": failures}, "\n".join(lines))
    return EXIT_OK if report.ok else EXIT_COUNTEREXAMPLE


def cmd_decompose(args) -> int:
    system = _load_system(args)
    cycle = chain_from_json(system, _read_json(args.cycle))
    if not isinstance(cycle, Cycle):
        raise InputError("the chain is not closed")
    joiner = _joiner(system, args.joiner)
    try:
        trace = decompose(system, joiner, cycle, args.fuel)
    except NonNoetherianError as exc:
        evidence = chain_to_json(system, exc.cycle)
        _emit(
            args,
            {"error": "non-noetherian", "monotone_cycle": evidence},
            f"non-Noetherian: monotone cycle of length {len(exc.cycle)} at {evidence['start']}",
        )
        return EXIT_NONTERMINATION
    except (NonTerminationError, FuelExhaustedError) as exc:
        _emit(args, {"error": "fuel-exhausted", "message": str(exc)}, f"fuel exhausted: {exc}")
        return EXIT_NONTERMINATION
    _emit(args, trace_to_json(system, trace), trace_to_text(system, trace))
    return EXIT_OK


def _labelling(system, source: str):
    data = _read_json(source)
    if isinstance(data, dict) and data.get("kind") == "free-group-letters":
        if not isinstance(system, FreeGroupSystem):
            raise InputError("the letter labelling needs a free-group system")
        return free_group_letter_labelling(system.generators)
    return labelling_from_json(system, data)


def cmd_coherence(args) -> int:
    system = _load_system(args)
    _require_finite(system)
    labelling = _labelling(system, args.labelling)
    problems = labelling.violations(system.edges())
    if problems:
        raise InputError("labelling is not a functor on edges: " + "; ".join(problems[:5]))
    joiner = _joiner(system, args.joiner)
    verdict = check_confluence_coherence(system, joiner, labelling, enumerate_spans(system))
    payload = verdict_to_json(system, labelling, verdict)
    if isinstance(verdict, Certified):
        lines = [f"certified: {verdict.spans_checked} confluence cycle(s) evaluate to identities"]
    else:
        s = payload["span"]
        lines = [f"counterexample at {s['apex']} via {s['left']} / {s['right']}: {payload['morphism']}"]
    code = EXIT_OK if isinstance(verdict, Certified) else EXIT_COUNTEREXAMPLE
    if args.oracle_bound is not None:
        brute = brute_coherence(system, labelling, EnumerationBound(args.oracle_bound))
        if isinstance(verdict, Certified):
            agree = brute.ok
        else:
            # the brute search must see the counterexample when its cycle is in range
            agree = not brute.ok or len(verdict.cycle) > args.oracle_bound
        oracle: dict = {"bound": args.oracle_bound, "cycles_checked": brute.cycles_checked, "ok": brute.ok}
        if brute.failing_cycle is not None:
            oracle["failing_cycle"] = chain_to_json(system, brute.failing_cycle)
            oracle["morphism"] = labelling.groupoid.format_morphism(eval_chain(labelling, brute.failing_cycle))
        oracle["agrees"] = agree
        payload["oracle"] = oracle
        lines.append(
            f"oracle: {brute.cycles_checked} cycle(s) up to length {args.oracle_bound}, "
            + ("agreement" if agree else "DISAGREEMENT")
        )
        if not agree:
            code = EXIT_DISAGREEMENT
    _emit(args, payload, "\n".join(lines))
    return code


def cmd_enumerate(args) -> int:
    system = _load_system(args)
    _require_finite(system)
    cycles = enumerate_cycles(system, EnumerationBound(args.bound))
    rows = [chain_to_json(system, c) for c in cycles]
    text = "\n".join(
        f"{r['start']}: " + (" ".join(f"{s['dir']}:{s['edge']}" for s in r["steps"]) or "(empty)")
        for r in rows
    )
    _emit(args, {"bound": args.bound, "count": len(rows), "cycles": rows}, text)
    return EXIT_OK


def cmd_freegroup(args) -> int:
    if not 1 <= args.generators <= 26:
        raise InputError("--generators must be between 1 and 26")
    if args.max_len < 0:
        raise InputError("--max-len must be non-negative")
    data = instance_to_json(FreeGroupSystem(args.generators, args.max_len))
    text = f"{len(data['vertices'])} word(s), {len(data['edges'])} cancellation(s)"
    _emit(args, data, text)
    return EXIT_OK


# parser -------------------------------------------------------------------


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _non_negative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument(
        "--seed", type=int, default=None, help="accepted for reproducible scripts; never changes a verdict"
    )

    parser = argparse.ArgumentParser(
        prog="noethercycles", description="Confluence, cycle decomposition and coherence checks."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def system_arg(p):
        p.add_argument("system", help="system JSON file, '-' for stdin, or inline JSON")
        p.add_argument("--max-len", type=_non_negative, default=None, help="word/list bound for generated systems")

    def joiner_arg(p):
        p.add_argument("--joiner", choices=("auto", "fg", "svk"), default=None)

    p = sub.add_parser("check", parents=[common], help="check local confluence of every span")
    system_arg(p)
    joiner_arg(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("decompose", parents=[common], help="decompose a cycle into confluence cycles")
    system_arg(p)
    p.add_argument("cycle", help="cycle JSON file, '-' for stdin, or inline JSON")
    joiner_arg(p)
    p.add_argument("--fuel", type=_positive, default=None)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("coherence", parents=[common], help="check a groupoid labelling on confluence cycles")
    system_arg(p)
    p.add_argument("labelling", help="labelling JSON file, '-' for stdin, or inline JSON")
    joiner_arg(p)
    p.add_argument("--oracle-bound", type=_non_negative, default=None, help="also evaluate all cycles up to N")
    p.set_defaults(func=cmd_coherence)

    p = sub.add_parser("enumerate", parents=[common], help="list all cycles up to a length")
    system_arg(p)
    p.add_argument("--bound", type=_non_negative, required=True, help="maximal cycle length")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("freegroup", parents=[common], help="write a bounded free-group system")
    p.add_argument("--generators", type=int, required=True)
    p.add_argument("--max-len", type=int, required=True)
    p.set_defaults(func=cmd_freegroup)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    if sum(src == "-" for src in (getattr(args, k, None) for k in ("system", "cycle", "labelling"))) > 1:
        print("error: only one input can come from stdin", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except NotLocallyConfluentError as exc:
        print(f"error: span not joinable: {exc}", file=sys.stderr)
        return EXIT_COUNTEREXAMPLE
    except (InputError, ArsError, GroupoidError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
