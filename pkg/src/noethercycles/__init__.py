"""Noetherian cycle induction for abstract rewriting systems.

Decompose cycles of a terminating, locally confluent relation into confluence
cycles, and use that to certify coherence of groupoid-valued edge labellings.
"""

from .core import (
    BWD,
    FWD,
    ArsError,
    Chain,
    Cycle,
    Dir,
    Edge,
    Span,
    Step,
    bwd,
    concat,
    empty,
    find_span,
    fwd,
    invert,
    is_monotone,
    rotate,
    vertex_list,
)
from .confluence import (
    ExtendedCospan,
    auto_joiner,
    check_local_confluence,
    confluence_cycle,
    newman_join,
)
from .induction import (
    DecompositionTrace,
    DecompStep,
    cycle_induction,
    decompose,
    decompose_step,
    verify_merge_decomposition,
)
from .orders import all_less, cycle_step_lt, list_lt, rot_lt

__version__ = "0.1.0"

__all__ = [
    "ArsError",
    "BWD",
    "Chain",
    "Cycle",
    "DecompStep",
    "DecompositionTrace",
    "Dir",
    "Edge",
    "ExtendedCospan",
    "FWD",
    "Span",
    "Step",
    "all_less",
    "auto_joiner",
    "check_local_confluence",
    "concat",
    "confluence_cycle",
    "cycle_induction",
    "cycle_step_lt",
    "decompose",
    "decompose_step",
    "empty",
    "find_span",
    "invert",
    "is_monotone",
    "list_lt",
    "newman_join",
    "rot_lt",
    "rotate",
    "fwd",
    "bwd",
    "verify_merge_decomposition",
    "vertex_list",
]
