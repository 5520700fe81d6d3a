"""Machines, terms and transition systems used by the demos and tests.

Files are read through :mod:`importlib.resources`, so the corpus works
from an installed package as well as from a source checkout.
"""

from __future__ import annotations

from importlib.resources import files

from ..lts import Lts, read_aut
from ..pi import parse_pi
from ..pi.terms import Term
from ..rtm import Rtm, parse_rtm

RTMS = ("parity", "counter", "deadlock")
# name the environment offers on the dataless inputs of the unrolled counter
BRANCHING_INPUT = "e"

_CELL = "c?(h,t,b).(h!<t,b>.0 + flip?().c!<h,t,one>.0)"
_INTERFACE = "i?(h).(inc?().(v h1)c!<h1,h,zero>.i!h1.0 + flush?().flip!<>.d!h.0)"
_DUMP = "d?(h).h?(t,b).b!<>.d!t.0"


def names() -> list:
    return sorted(p.name for p in files(__package__).iterdir() if p.suffix in (".rtm", ".pi", ".aut"))


def read_text(name: str) -> str:
    return files(__package__).joinpath(name).read_text(encoding="utf-8")


def path(name: str):
    """A path usable while the package is installed unzipped."""
    return files(__package__).joinpath(name)


def rtm(name: str) -> Rtm:
    return parse_rtm(read_text(f"{name}.rtm"))


def pi(name: str) -> Term:
    return parse_pi(read_text(f"{name}.pi"))


def aut(name: str) -> Lts:
    return read_aut(read_text(f"{name}.aut"))


def branching_counter_source(n: int) -> str:
    """The unboundedly branching counter with every replication unrolled
    into ``n + 1`` copies, enough for ``n`` increments and one flip."""
    if n < 1:
        raise ValueError("n must be positive")
    k = n + 1
    parts = ["i!s.0", "flip?().0"] + [_CELL] * k + [_INTERFACE] * k + [_DUMP] * k
    body = "\n  | ".join(parts)
    return (
        f"# linked list of one-bit cells, bounded to {n} increment(s)\n"
        f"# inputs are dataless: explore with the single environment name {BRANCHING_INPUT}\n"
        f"(v c,i,d,s,flip)(\n    {body}\n)\n"
    )


def branching_counter(n: int) -> Term:
    return parse_pi(branching_counter_source(n))
