"""π-calculus engine: syntax, binding, normal forms and transitions."""

from .normal import alpha_eq, normalize, render, simplify
from .semantics import EMPTY_UNIVERSE, NameUniverse, canonical_fresh, pi_generator, pi_out
from .syntax import PiSyntaxError, parse_pi
from .terms import (
    NIL,
    Bang,
    In,
    InP,
    Nil,
    Out,
    OutP,
    Par,
    Res,
    Sum,
    Tau,
    Term,
    bound_names,
    expand_polyadic,
    free_names,
    par,
    res,
    substitute,
    summation,
)
