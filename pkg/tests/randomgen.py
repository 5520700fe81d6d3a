"""Seeded generators of small random transition systems and π-terms."""

from __future__ import annotations

import random

from rtmpi.lts import TAU_LABEL, Lts, plain
from rtmpi.pi import NIL, In, Out, Par, Res, Sum, Tau, Term

NAMES = ("a", "b", "c")


def random_lts(rng: random.Random, max_states: int = 8, max_transitions: int = 12, max_labels: int = 3) -> Lts:
    n = rng.randint(1, max_states)
    m = rng.randint(0, max_transitions)
    pool = [TAU_LABEL, plain("a"), plain("b")][: rng.randint(1, max_labels)]
    trans = {(rng.randrange(n), rng.choice(pool), rng.randrange(n)) for _ in range(m)}
    return Lts(tuple(range(n)), tuple(sorted(trans, key=lambda t: (t[0], t[1].render(), t[2]))))


def _prefix(rng, depth, bound):
    names = NAMES + tuple(bound)
    kind = rng.choice(("tau", "out", "in"))
    if kind == "tau":
        return Tau(random_term(rng, depth - 1, bound))
    if kind == "out":
        return Out(rng.choice(names), rng.choice(names), random_term(rng, depth - 1, bound))
    z = f"z{len(bound)}"
    return In(rng.choice(names), z, random_term(rng, depth - 1, bound + (z,)))


def random_term(rng: random.Random, depth: int = 3, bound: tuple = ()) -> Term:
    """A replication-free term, hence one with a finite transition system."""
    if depth <= 0:
        return NIL
    roll = rng.random()
    if roll < 0.15:
        return NIL
    if roll < 0.5:
        return _prefix(rng, depth, bound)
    if roll < 0.65:
        return Sum((_prefix(rng, depth, bound), _prefix(rng, depth, bound)))
    if roll < 0.85:
        return Par((random_term(rng, depth - 1, bound), random_term(rng, depth - 1, bound)))
    z = f"w{len(bound)}"
    return Res(z, random_term(rng, depth - 1, bound + (z,)))
