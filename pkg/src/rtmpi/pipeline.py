"""Pipelines shared by the command line and the tests.

The central one is :func:`roundtrip`: explore an RTM natively, compile it,
explore the compiled term and compare the two systems.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional

from .compiler import action_name, compile_rtm
from .equivalence import INDETERMINATE, EquivResult, equivalent
from .lts import (
    NU_OUTPUT,
    ActionLabel,
    GuardedGenerator,
    Lts,
    RelabeledGenerator,
    RestrictedGenerator,
    StepGenerator,
    explore,
    plain,
)
from .pi import NameUniverse, pi_generator
from .rtm import Rtm, rtm_generator

DEFAULT_MAX_STATES = 20_000
DEFAULT_MAX_DEPTH = 200
MODES = ("bb", "dpbb")


def action_relabeling(m: Rtm):
    """Map the anonymized output ``nu!act_a`` of a compiled term back to the
    plain action ``a``; other labels are left alone."""
    back = {action_name(a): a for a in m.actions}

    def relabel(label: ActionLabel) -> ActionLabel:
        if label.kind == NU_OUTPUT and label.channel in back:
            return plain(back[label.channel])
        return label

    return relabel


def compiled_generator(m: Rtm, settled: bool = True) -> StepGenerator:
    """Generator of the compiled term of ``m``, restricted to no external
    data and labelled with the actions of ``m``."""
    term = compile_rtm(m).term
    gen = RestrictedGenerator(pi_generator(term, NameUniverse(), settled=settled), ())
    return RelabeledGenerator(gen, action_relabeling(m))


def visible_budget(gen: StepGenerator, k: int) -> GuardedGenerator:
    """Allow at most ``k`` visible steps; internal steps are unconstrained."""
    return GuardedGenerator(gen, k, lambda q, label: str(int(q) - 1) if int(q) > 0 else None)


@dataclass(frozen=True)
class RoundtripReport:
    native: Lts
    compiled: Optional[Lts]
    result: EquivResult
    seconds: float
    message: str = ""

    @property
    def verdict(self) -> str:
        return self.result.verdict


def roundtrip(
    m: Rtm,
    mode: str = "dpbb",
    max_states: int = DEFAULT_MAX_STATES,
    max_depth: int = DEFAULT_MAX_DEPTH,
    settled: bool = True,
    visible_bound: Optional[int] = None,
) -> RoundtripReport:
    """Compare the behaviour of ``m`` with that of its compiled term.

    With ``visible_bound`` both systems are cut after that many visible
    steps, which makes machines with an unbounded tape checkable.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")

    def bounded(gen):
        return gen if visible_bound is None else visible_budget(gen, visible_bound)

    start = time.perf_counter()
    native = explore(bounded(rtm_generator(m)), max_states, max_depth)
    if native.frontier:
        return RoundtripReport(
            native, None, EquivResult(INDETERMINATE), time.perf_counter() - start,
            f"the machine has more than {max_states} configurations within depth {max_depth}; raise the bounds",
        )
    compiled = explore(bounded(compiled_generator(m, settled)), max_states, max_depth)
    if compiled.frontier:
        return RoundtripReport(
            native, compiled, EquivResult(INDETERMINATE), time.perf_counter() - start,
            f"the compiled term exceeds {max_states} states within depth {max_depth}; raise the bounds",
        )
    result = equivalent(native, compiled, divergence=mode == "dpbb")
    return RoundtripReport(native, compiled, result, time.perf_counter() - start)
