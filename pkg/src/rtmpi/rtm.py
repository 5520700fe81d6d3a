"""Reactive Turing machines: text format, configurations and their
transitions."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import NamedTuple

from .lts import TAU_LABEL, FunctionGenerator, plain

BLANK = "_"
TAU = "tau"
_IDENT = re.compile(r"[A-Za-z0-9][A-Za-z0-9_]*")


class RtmError(ValueError):
    pass


class Rule(NamedTuple):
    state: str
    read: str
    action: str
    write: str
    move: str
    target: str

    def __str__(self):
        return f"{self.state} {self.action} [{self.read}/{self.write}] {self.move} {self.target}"


@dataclass(frozen=True)
class Rtm:
    states: tuple
    actions: tuple
    data: tuple
    rules: tuple
    initial: str

    def __post_init__(self):
        if not self.states:
            raise RtmError("an RTM needs at least one state")
        if self.initial not in self.states:
            raise RtmError(f"undeclared state {self.initial}")
        if BLANK in self.data:
            raise RtmError("the blank symbol is implicit and cannot be declared as data")
        if TAU in self.actions:
            raise RtmError("tau is implicit and cannot be declared as an action")
        symbols = set(self.data) | {BLANK}
        seen = set()
        for r in self.rules:
            for s in (r.state, r.target):
                if s not in self.states:
                    raise RtmError(f"undeclared state {s}")
            for d in (r.read, r.write):
                if d not in symbols:
                    raise RtmError(f"undeclared data symbol {d}")
            if r.action != TAU and r.action not in self.actions:
                raise RtmError(f"undeclared action {r.action}")
            if r.move not in ("L", "R"):
                raise RtmError(f"bad move {r.move}")
            if r in seen:
                raise RtmError(f"duplicate rule {r}")
            seen.add(r)

    @property
    def tape_symbols(self) -> tuple:
        return (BLANK,) + tuple(self.data)

    def rules_for(self, state: str, symbol: str):
        return [r for r in self.rules if r.state == state and r.read == symbol]


_RULE = re.compile(r"(\S+)\s+(\S+)\s*\[\s*(\S+?)\s*/\s*(\S+?)\s*\]\s*([LR])\s+(\S+)")


def parse_rtm(text: str) -> Rtm:
    """Parse the line-oriented machine format (``states:``, ``actions:``,
    ``data:``, ``init:`` and rule lines ``s a [d/e] M t``)."""
    decl = {}
    rules = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, rest = line.partition(":")
        if sep and head.strip() in ("states", "actions", "data", "init"):
            key = head.strip()
            if key in decl:
                raise RtmError(f"line {lineno}: repeated '{key}' declaration")
            names = rest.split()
            for n in names:
                if not _IDENT.fullmatch(n):
                    raise RtmError(f"line {lineno}: bad identifier {n!r}")
            decl[key] = names
            continue
        m = _RULE.fullmatch(line)
        if not m:
            raise RtmError(f"line {lineno}: cannot parse {line!r}")
        s, a, d, e, move, t = m.groups()
        rules.append(Rule(s, d, a, e, move, t))
    if not decl.get("init"):
        raise RtmError("missing initial state")
    if len(decl["init"]) != 1:
        raise RtmError("exactly one initial state expected")
    if len(set(rules)) != len(rules):
        dup = next(r for r in rules if rules.count(r) > 1)
        raise RtmError(f"duplicate rule {dup}")
    return Rtm(
        states=tuple(decl.get("states", ())),
        actions=tuple(decl.get("actions", ())),
        data=tuple(decl.get("data", ())),
        rules=tuple(rules),
        initial=decl["init"][0],
    )


def format_rtm(m: Rtm) -> str:
    lines = [
        "states: " + " ".join(m.states),
        "actions: " + " ".join(m.actions),
        "data: " + " ".join(m.data),
        "init: " + m.initial,
    ]
    lines += [str(r) for r in m.rules]
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class TapeInstance:
    """Tape contents with a head position; kept trimmed so that blank
    margins exist only under the head."""

    cells: tuple
    head: int

    def __post_init__(self):
        if not 0 <= self.head < len(self.cells):
            raise RtmError("head out of range")

    @classmethod
    def blank(cls) -> "TapeInstance":
        return cls((BLANK,), 0)

    @property
    def symbol(self) -> str:
        return self.cells[self.head]

    def normalized(self) -> "TapeInstance":
        cells, head = list(self.cells), self.head
        while head > 0 and cells[0] == BLANK:
            cells.pop(0)
            head -= 1
        while len(cells) - 1 > head and cells[-1] == BLANK:
            cells.pop()
        return TapeInstance(tuple(cells), head)

    def write_move(self, symbol: str, move: str) -> "TapeInstance":
        cells = list(self.cells)
        cells[self.head] = symbol
        head = self.head
        if move == "L":
            if head == 0:
                cells.insert(0, BLANK)
            else:
                head -= 1
        else:
            head += 1
            if head == len(cells):
                cells.append(BLANK)
        return TapeInstance(tuple(cells), head).normalized()

    def render(self) -> str:
        return " ".join(f"[{c}]" if i == self.head else c for i, c in enumerate(self.cells))


@dataclass(frozen=True)
class Configuration:
    state: str
    tape: TapeInstance

    def render(self) -> str:
        return f"{self.state}: {self.tape.render()}"


def initial_config(m: Rtm) -> Configuration:
    return Configuration(m.initial, TapeInstance.blank())


def rule_label(action: str):
    return TAU_LABEL if action == TAU else plain(action)


def rtm_out(m: Rtm, c: Configuration) -> list:
    """All ``(label, configuration)`` successors, sorted."""
    tape = c.tape.normalized()
    result = set()
    for r in m.rules_for(c.state, tape.symbol):
        result.add((rule_label(r.action), Configuration(r.target, tape.write_move(r.write, r.move))))
    return sorted(result, key=lambda p: (p[0].render(), p[1].render()))


def rtm_generator(m: Rtm) -> FunctionGenerator:
    return FunctionGenerator(initial_config(m), lambda c: rtm_out(m, c), Configuration.render)
