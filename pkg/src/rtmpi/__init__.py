"""Reactive Turing machines, the π-calculus and branching bisimilarity.

The package explores the behaviour of reactive Turing machines and of
π-terms as labelled transition systems, compiles machines into π-terms and
compares transition systems up to (divergence-preserving) branching
bisimilarity.
"""

from .compiler import compile_rtm
from .equivalence import branching_bisim, branching_degree, dp_branching_bisim, equivalent, oracle
from .lts import Lts, explore, read_aut, restrict, write_aut
from .pipeline import roundtrip
from .rtm import Rtm, parse_rtm, rtm_generator

__all__ = [
    "Lts",
    "Rtm",
    "branching_bisim",
    "branching_degree",
    "compile_rtm",
    "dp_branching_bisim",
    "equivalent",
    "explore",
    "oracle",
    "parse_rtm",
    "read_aut",
    "restrict",
    "roundtrip",
    "rtm_generator",
    "write_aut",
]

__version__ = "0.1.0"
