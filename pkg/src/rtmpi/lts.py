"""Finite labelled transition systems: labels, bounded exploration,
name restriction and the Aldebaran (``.aut``) text format."""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Optional

TAU = "tau"
PLAIN = "plain"
FREE_INPUT = "in"
FREE_OUTPUT = "out"
BOUND_OUTPUT = "bout"
NU_OUTPUT = "nu"

_KINDS = (TAU, PLAIN, FREE_INPUT, FREE_OUTPUT, BOUND_OUTPUT, NU_OUTPUT)
_NAME = re.compile(r"[A-Za-z0-9_][A-Za-z0-9_']*")


class LtsError(ValueError):
    pass


class FrontierError(LtsError):
    """Raised when a truncated system is used where a complete one is needed."""


@dataclass(frozen=True, order=True)
class ActionLabel:
    """A transition label.

    ``channel`` holds the symbol of a plain label and the subject of the
    π-calculus labels; ``datum`` holds the object name (or the placeholder of
    a bound output).
    """

    kind: str
    channel: Optional[str] = None
    datum: Optional[str] = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise LtsError(f"unknown label kind {self.kind!r}")
        if self.kind == TAU:
            if self.channel is not None or self.datum is not None:
                raise LtsError("tau carries no names")
            return
        if not self.channel:
            raise LtsError(f"{self.kind} label needs a nonempty name")
        needs_datum = self.kind in (FREE_INPUT, FREE_OUTPUT, BOUND_OUTPUT)
        if needs_datum and not self.datum:
            raise LtsError(f"{self.kind} label needs a datum")
        if not needs_datum and self.datum is not None:
            raise LtsError(f"{self.kind} label carries no datum")
        if self.kind == FREE_OUTPUT and self.channel == "nu":
            raise LtsError("channel name 'nu' is reserved for nu-output labels")
        if self.kind == PLAIN and (self.channel == TAU or not _NAME.fullmatch(self.channel)):
            raise LtsError(f"bad plain symbol {self.channel!r}")

    @property
    def is_tau(self) -> bool:
        return self.kind == TAU

    def render(self) -> str:
        k = self.kind
        if k == TAU:
            return "tau"
        if k == PLAIN:
            return self.channel
        if k == FREE_INPUT:
            return f"{self.channel}?{self.datum}"
        if k == FREE_OUTPUT:
            return f"{self.channel}!{self.datum}"
        if k == BOUND_OUTPUT:
            return f"{self.channel}!({self.datum})"
        return f"nu!{self.channel}"

    def __str__(self):
        return self.render()

    @classmethod
    def parse(cls, text: str) -> "ActionLabel":
        text = text.strip()
        if text == "tau":
            return TAU_LABEL
        m = re.fullmatch(r"nu!(\S+)", text)
        if m:
            return cls(NU_OUTPUT, m.group(1))
        m = re.fullmatch(r"([^?!()\s]+)!\(([^?!()\s]+)\)", text)
        if m:
            return cls(BOUND_OUTPUT, m.group(1), m.group(2))
        m = re.fullmatch(r"([^?!()\s]+)([?!])([^?!()\s]+)", text)
        if m:
            kind = FREE_INPUT if m.group(2) == "?" else FREE_OUTPUT
            return cls(kind, m.group(1), m.group(3))
        if _NAME.fullmatch(text):
            return cls(PLAIN, text)
        raise LtsError(f"unparseable label {text!r}")


TAU_LABEL = ActionLabel(TAU)


def plain(symbol: str) -> ActionLabel:
    return ActionLabel(PLAIN, symbol)


def free_input(channel: str, datum: str) -> ActionLabel:
    return ActionLabel(FREE_INPUT, channel, datum)


def free_output(channel: str, datum: str) -> ActionLabel:
    return ActionLabel(FREE_OUTPUT, channel, datum)


def bound_output(channel: str, placeholder: str) -> ActionLabel:
    return ActionLabel(BOUND_OUTPUT, channel, placeholder)


def nu_output(channel: str) -> ActionLabel:
    return ActionLabel(NU_OUTPUT, channel)


def _label_key(label: ActionLabel):
    return label.render()


@dataclass(frozen=True)
class Lts:
    """An explored transition system. State 0 need not be initial in
    general, but :func:`explore` always numbers the initial state 0."""

    states: tuple
    transitions: tuple
    initial: int = 0
    frontier: frozenset = frozenset()
    _out: tuple = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        n = len(self.states)
        if not 0 <= self.initial < n:
            raise LtsError("initial state out of range")
        if len(set(self.states)) != n:
            raise LtsError("state keys must be distinct")
        out = [[] for _ in range(n)]
        for src, label, dst in self.transitions:
            if not (0 <= src < n and 0 <= dst < n):
                raise LtsError(f"transition ({src}, {label}, {dst}) out of range")
            out[src].append((label, dst))
        for f in self.frontier:
            if not 0 <= f < n:
                raise LtsError("frontier index out of range")
            if out[f]:
                raise LtsError("frontier states cannot have outgoing transitions")
        object.__setattr__(self, "_out", tuple(tuple(o) for o in out))

    @property
    def num_states(self) -> int:
        return len(self.states)

    def out(self, s: int) -> tuple:
        """Outgoing ``(label, target)`` pairs of state ``s``."""
        return self._out[s]

    def reachable(self, start: Optional[int] = None) -> set:
        start = self.initial if start is None else start
        seen = {start}
        todo = [start]
        while todo:
            s = todo.pop()
            for _, t in self._out[s]:
                if t not in seen:
                    seen.add(t)
                    todo.append(t)
        return seen

    def rooted_at(self, s: int) -> "Lts":
        """The sub-system reachable from ``s``, renumbered breadth-first."""
        return _rebuild(self, s, lambda label: label)


class StepGenerator:
    """Successor function over canonical string keys.

    ``successors(key)`` must be deterministic. Subclasses may keep a key to
    object table; :class:`FunctionGenerator` does exactly that.
    """

    initial: str

    def successors(self, key: str) -> Iterable[tuple]:
        raise NotImplementedError


class FunctionGenerator(StepGenerator):
    """Generator built from an initial object, a step function returning
    ``(label, object)`` pairs and a key renderer."""

    def __init__(self, initial, step: Callable, render: Callable[[Hashable], str]):
        self._step = step
        self._render = render
        self.initial = render(initial)
        self._objects = {self.initial: initial}

    def lookup(self, key: str):
        return self._objects[key]

    def successors(self, key):
        result = []
        for label, obj in self._step(self._objects[key]):
            k = self._render(obj)
            self._objects.setdefault(k, obj)
            result.append((label, k))
        return result


class RestrictedGenerator(StepGenerator):
    """On-the-fly form of :func:`restrict`."""

    def __init__(self, inner: StepGenerator, allowed_inputs: Iterable[str]):
        self.inner = inner
        self.allowed = frozenset(allowed_inputs)
        self.initial = inner.initial

    def successors(self, key):
        result = []
        for label, target in self.inner.successors(key):
            label = _restrict_label(label, self.allowed)
            if label is not None:
                result.append((label, target))
        return result


class RelabeledGenerator(StepGenerator):
    def __init__(self, inner: StepGenerator, relabel: Callable[[ActionLabel], ActionLabel]):
        self.inner = inner
        self.relabel = relabel
        self.initial = inner.initial

    def successors(self, key):
        return [(self.relabel(label), t) for label, t in self.inner.successors(key)]


class GuardedGenerator(StepGenerator):
    """Synchronous product with a deterministic observer.

    ``guard(q, label)`` returns the observer state after a visible label, or
    ``None`` to block it. Internal steps leave the observer untouched.
    """

    def __init__(self, inner: StepGenerator, initial_q, guard: Callable):
        self.inner = inner
        self.guard = guard
        self.initial = f"{initial_q}|{inner.initial}"

    def successors(self, key):
        q, _, inner_key = key.partition("|")
        result = []
        for label, target in self.inner.successors(inner_key):
            if label.is_tau:
                result.append((label, f"{q}|{target}"))
                continue
            q2 = self.guard(q, label)
            if q2 is not None:
                result.append((label, f"{q2}|{target}"))
        return result


class ExplorationError(RuntimeError):
    def __init__(self, key, cause):
        super().__init__(f"successor computation failed in state {key!r}: {cause}")
        self.key = key
        self.cause = cause


def explore(gen: StepGenerator, max_states: int = 20000, max_depth: int = 200) -> Lts:
    """Breadth-first closure of ``gen.initial``.

    A state at depth ``max_depth`` is not expanded. Expansion stops for good
    as soon as adding a state's successors would exceed ``max_states``; every
    unexpanded state is reported in ``frontier``.
    """
    if max_states < 1 or max_depth < 0:
        raise ValueError("need max_states >= 1 and max_depth >= 0")
    index = {gen.initial: 0}
    keys = [gen.initial]
    depth = [0]
    transitions = []
    frontier = set()
    queue = deque([0])
    capped = False
    while queue:
        s = queue.popleft()
        if capped or depth[s] >= max_depth:
            frontier.add(s)
            continue
        try:
            succ = sorted(set(gen.successors(keys[s])), key=lambda p: (_label_key(p[0]), p[1]))
        except Exception as exc:
            raise ExplorationError(keys[s], exc) from exc
        fresh = {t for _, t in succ if t not in index}
        if len(keys) + len(fresh) > max_states:
            capped = True
            frontier.add(s)
            continue
        for label, t in succ:
            if t not in index:
                index[t] = len(keys)
                keys.append(t)
                depth.append(depth[s] + 1)
                queue.append(index[t])
            transitions.append((s, label, index[t]))
    return Lts(tuple(keys), tuple(transitions), 0, frozenset(frontier))


def _restrict_label(label: ActionLabel, allowed: frozenset) -> Optional[ActionLabel]:
    if label.kind == FREE_INPUT and label.datum not in allowed:
        return None
    if label.kind == BOUND_OUTPUT:
        return nu_output(label.channel)
    return label


def _rebuild(l: Lts, root: int, relabel: Callable) -> Lts:
    """Keep what is reachable from ``root`` after ``relabel`` (which may
    return ``None`` to delete a transition); renumber breadth-first."""
    index = {root: 0}
    order = [root]
    queue = deque([root])
    transitions = []
    while queue:
        s = queue.popleft()
        kept = []
        for label, t in l.out(s):
            new = relabel(label)
            if new is not None:
                kept.append((new, t))
        kept.sort(key=lambda p: (_label_key(p[0]), l.states[p[1]]))
        for label, t in kept:
            if t not in index:
                index[t] = len(order)
                order.append(t)
                queue.append(t)
            transitions.append((index[s], label, index[t]))
    frontier = frozenset(index[f] for f in l.frontier if f in index)
    return Lts(tuple(l.states[s] for s in order), tuple(transitions), 0, frontier)


def restrict(l: Lts, allowed_inputs: Iterable[str], allow_frontier: bool = False) -> Lts:
    """Delete free inputs of names outside ``allowed_inputs``, turn bound
    outputs into ``nu`` outputs and drop what became unreachable."""
    if l.frontier and not allow_frontier:
        raise FrontierError("restrict on a truncated LTS needs allow_frontier=True")
    allowed = frozenset(allowed_inputs)
    return _rebuild(l, l.initial, lambda label: _restrict_label(label, allowed))


def relabel(l: Lts, mapping: Callable[[ActionLabel], Optional[ActionLabel]]) -> Lts:
    return _rebuild(l, l.initial, mapping)


def labels(l: Lts) -> set:
    return {label for _, label, _ in l.transitions}


def write_aut(l: Lts) -> str:
    if l.frontier:
        raise LtsError("cannot write a truncated LTS as .aut")
    l = l.rooted_at(l.initial) if l.initial != 0 or len(l.reachable()) != l.num_states else l
    trans = sorted(l.transitions, key=lambda t: (t[0], t[1].render(), t[2]))
    lines = [f"des (0, {len(trans)}, {l.num_states})"]
    lines += [f'({s},"{label.render()}",{t})' for s, label, t in trans]
    return "\n".join(lines) + "\n"


_HEADER = re.compile(r"des\s*\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)")
_LINE = re.compile(r'\(\s*(\d+)\s*,\s*"([^"]*)"\s*,\s*(\d+)\s*\)')


def read_aut(text: str) -> Lts:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise LtsError("empty .aut file")
    m = _HEADER.fullmatch(lines[0])
    if not m:
        raise LtsError(f"malformed header {lines[0]!r}")
    init, ntrans, nstates = map(int, m.groups())
    if nstates < 1 or init >= nstates:
        raise LtsError("initial state out of range")
    if len(lines) - 1 != ntrans:
        raise LtsError(f"header declares {ntrans} transitions, found {len(lines) - 1}")
    transitions = []
    for ln in lines[1:]:
        m = _LINE.fullmatch(ln)
        if not m:
            raise LtsError(f"malformed transition line {ln!r}")
        s, t = int(m.group(1)), int(m.group(3))
        if s >= nstates or t >= nstates:
            raise LtsError(f"state index out of range in {ln!r}")
        transitions.append((s, ActionLabel.parse(m.group(2)), t))
    return Lts(tuple(str(i) for i in range(nstates)), tuple(transitions), init)


def isomorphic(a: Lts, b: Lts) -> bool:
    """Label-preserving isomorphism of the reachable parts (deterministic
    renumbering makes this exact for systems written by :func:`write_aut`;
    otherwise falls back to a backtracking search)."""
    ra, rb = a.rooted_at(a.initial), b.rooted_at(b.initial)
    if ra.num_states != rb.num_states or len(ra.transitions) != len(rb.transitions):
        return False
    key = lambda l: sorted((s, lab.render(), t) for s, lab, t in l.transitions)
    if key(ra) == key(rb):
        return True
    return _iso_search(ra, rb)


def _iso_search(a: Lts, b: Lts) -> bool:
    n = a.num_states
    ta = {(s, lab, t) for s, lab, t in a.transitions}
    tb = {(s, lab, t) for s, lab, t in b.transitions}
    sig = lambda l, s: (sorted(x.render() for x, _ in l.out(s)), )
    mapping = {a.initial: b.initial}
    used = {b.initial}
    order = list(range(n))

    def consistent():
        for s, lab, t in ta:
            if s in mapping and t in mapping and (mapping[s], lab, mapping[t]) not in tb:
                return False
        return True

    def go(i):
        if i == n:
            return len({(mapping[s], lab, mapping[t]) for s, lab, t in ta}) == len(tb) and all(
                (mapping[s], lab, mapping[t]) in tb for s, lab, t in ta)
        s = order[i]
        if s in mapping:
            return go(i + 1)
        for c in range(n):
            if c in used or sig(a, s) != sig(b, c):
                continue
            mapping[s] = c
            used.add(c)
            if consistent() and go(i + 1):
                return True
            del mapping[s]
            used.discard(c)
        return False

    return consistent() and go(0)
