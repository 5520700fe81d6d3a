"""Bounded checks of the laws the tape encoding relies on.

Both laws relate open terms with infinite behaviour (the generators can
always add another cell), so each side is composed with the same
deterministic observer that stops visible activity after a fixed budget.
Such an observer preserves divergence-preserving branching bisimilarity,
hence a failed check is a real counterexample and a passed one is evidence
up to the budget.
"""

from __future__ import annotations

from dataclasses import dataclass

from .compiler import (
    cell,
    cell_template,
    datum_name,
    generator_template,
    head,
    head_template,
    left_generator,
    right_generator,
    tape_snapshot,
)
from .equivalence import EquivResult, equivalent
from .lts import FREE_INPUT, RelabeledGenerator, RestrictedGenerator, explore, plain
from .pi import NameUniverse, pi_generator
from .pi.terms import NIL, Bang, OutP, Par, Term, res
from .pipeline import visible_budget
from .rtm import BLANK, Rtm, TapeInstance

CELL_PARAMS = ("t", "l", "r", "u", "d")


def recreation_pairs() -> dict:
    """The four recreation laws as ``name -> (pending call, running
    process)``, each with the replicated definition in parallel."""
    t, l, r, u, d = CELL_PARAMS
    bang_c, bang_b, bang_h = Bang(cell_template()), Bang(generator_template()), Bang(head_template())
    return {
        "cell": (
            res(["c"], Par((OutP("c", CELL_PARAMS, NIL), bang_c))),
            res(["c"], Par((cell(t, l, r, u, d), bang_c))),
        ),
        "left generator": (
            res(["bl", "br"], Par((OutP("bl", (t, r), NIL), bang_b))),
            res(["bl", "br", u, l], Par((left_generator(t, l, r, u), bang_b))),
        ),
        "right generator": (
            res(["bl", "br"], Par((OutP("br", (t, l), NIL), bang_b))),
            res(["bl", "br", u, r], Par((right_generator(t, l, r, u), bang_b))),
        ),
        "head": (
            res(["h"], Par((OutP("h", CELL_PARAMS, NIL), bang_h))),
            res(["h"], Par((head(t, l, r, u, d), bang_h))),
        ),
    }


def observe(term: Term, budget: int, names, settled: bool = False):
    """Explore ``term`` with free inputs drawn from ``names`` and at most
    ``budget`` visible steps."""
    names = frozenset(names)
    gen = RestrictedGenerator(pi_generator(term, NameUniverse(names), settled=settled), names)
    return explore(visible_budget(gen, budget))


def check_equivalent(p: Term, q: Term, budget: int, names, settled: bool = False) -> EquivResult:
    return equivalent(observe(p, budget, names, settled), observe(q, budget, names, settled))


def check_recreation(budget: int = 6, names=("d", "e"), settled: bool = False) -> dict:
    """Verdict per recreation law. The unsettled semantics is the default
    because settling itself relies on these laws."""
    return {
        name: check_equivalent(lhs, rhs, budget, names, settled)
        for name, (lhs, rhs) in recreation_pairs().items()
    }


# ------------------------------------------------------------------- tape


def _tape_generator(m: Rtm, tape: TapeInstance, budget: int):
    data = [datum_name(d) for d in m.tape_symbols]
    gen = RestrictedGenerator(pi_generator(tape_snapshot(m, tape), NameUniverse(data), settled=True), data)
    # the name received with a head move carries no information
    gen = RelabeledGenerator(
        gen, lambda a: plain(a.channel) if a.kind == FREE_INPUT and a.channel in ("left", "right") else a
    )
    return visible_budget(gen, budget)


def expected_menu(m: Rtm, tape: TapeInstance) -> set:
    """Rendered labels the tape offers: read the current datum, write any
    datum, move left, move right."""
    menu = {f"read!{datum_name(tape.symbol)}", "left", "right"}
    menu |= {f"write?{datum_name(e)}" for e in m.tape_symbols}
    return menu


def expected_tape(m: Rtm, tape: TapeInstance, label: str) -> TapeInstance:
    """The tape instance a visible step should lead to, growing the tape
    with a blank when the head moves past an end."""
    cells, i = tuple(tape.cells), tape.head
    if label.startswith("read!"):
        return tape
    if label.startswith("write?"):
        name = label.split("?", 1)[1]
        e = next(d for d in m.tape_symbols if datum_name(d) == name)
        return TapeInstance(cells[:i] + (e,) + cells[i + 1:], i)
    if label == "left":
        return TapeInstance(cells, i - 1) if i > 0 else TapeInstance((BLANK,) + cells, 0)
    if label == "right":
        return TapeInstance(cells, i + 1) if i < len(cells) - 1 else TapeInstance(cells + (BLANK,), i + 1)
    raise ValueError(f"not a tape action: {label}")


@dataclass(frozen=True)
class TapeReport:
    menu: frozenset
    results: dict

    def ok(self, expected: set) -> bool:
        return set(self.menu) == expected and all(r.equivalent for r in self.results.values())


def check_tape(m: Rtm, tape: TapeInstance, budget: int = 2) -> TapeReport:
    """Take every visible step of the tape term and compare its target
    with the tape term of :func:`expected_tape` (one visible step less)."""
    lts = explore(_tape_generator(m, tape, budget))
    results = {}
    for label, target in lts.out(lts.initial):
        if label.is_tau:
            continue
        name = label.render()
        wanted = explore(_tape_generator(m, expected_tape(m, tape, name), budget - 1))
        results[name] = equivalent(lts.rooted_at(target), wanted)
    return TapeReport(frozenset(results), results)
