"""Translation of a reactive Turing machine into a π-term.

The tape is a chain of cell processes linked by private channels, with a
head process in front of the current cell and a generator at each end that
creates fresh blank cells on demand. A finite control process talks to the
head over ``read``, ``write``, ``left`` and ``right``.

Machine states, data and actions become the π names ``st_<s>``,
``dt_<d>`` and ``act_<a>``; the blank becomes ``dtblank``. Dataless
prefixes are written as 0-ary polyadic prefixes ``x!<>`` and ``x?()``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .pi.normal import normalize
from .pi.syntax import parse_pi
from .pi.terms import NIL, Bang, InP, Par, Res, Term, all_names, fresh_name, res, substitute, summation
from .rtm import BLANK, TAU, Configuration, Rtm, TapeInstance, initial_config

BLANK_NAME = "dtblank"
CHANNELS = ("read", "write", "left", "right")
INFRASTRUCTURE = ("c", "h", "bl", "br") + CHANNELS


def state_name(s: str) -> str:
    return f"st_{s}"


def datum_name(d: str) -> str:
    return BLANK_NAME if d == BLANK else f"dt_{d}"


def action_name(a: str) -> str:
    return f"act_{a}"


def name_map(m: Rtm) -> dict:
    """``("state"|"datum"|"action", symbol) -> π name``; injective by
    construction because the three families use distinct prefixes."""
    result = {("state", s): state_name(s) for s in m.states}
    result.update({("datum", d): datum_name(d) for d in m.tape_symbols})
    result.update({("action", a): action_name(a) for a in m.actions})
    return result


def _parse(text: str) -> Term:
    return parse_pi(text)


def cell_template() -> Term:
    """``C``: receive the five cell parameters on ``c``, then either accept
    an update on ``u`` or describe the cell on ``t``; recreate either way."""
    return _parse("c?(t,l,r,u,d).(u?(e).c!<t,l,r,u,e>.0 + t!<l,r,u,d>.c!<t,l,r,u,d>.0)")


def _left_generator_body() -> str:
    return f"t!<l,r,u,{BLANK_NAME}>.(c!<t,l,r,u,{BLANK_NAME}>.0 | bl!<l,t>.0)"


def _right_generator_body() -> str:
    # mirror image of the left generator: the new right end is ``r`` and its
    # left neighbour is the cell just created
    return f"t!<l,r,u,{BLANK_NAME}>.(c!<t,l,r,u,{BLANK_NAME}>.0 | br!<r,t>.0)"


def generator_template() -> Term:
    """``B``: extend the tape by one blank cell at the left or right end."""
    return _parse(
        f"bl?(t,r).(v u,l){_left_generator_body()} + br?(t,l).(v u,r){_right_generator_body()}"
    )


def left_generator(t, l, r, u) -> Term:
    return _instantiate(_parse(_left_generator_body()), "tlru", (t, l, r, u))


def right_generator(t, l, r, u) -> Term:
    return _instantiate(_parse(_right_generator_body()), "tlru", (t, l, r, u))


def head_template() -> Term:
    return _parse(
        "h?(t,l,r,u,d).("
        "read!d.h!<t,l,r,u,d>.0"
        " + write?(e).u!e.h!<t,l,r,u,e>.0"
        " + left?().l?(l1,r1,u1,d1).h!<l,l1,r1,u1,d1>.0"
        " + right?().r?(l1,r1,u1,d1).h!<r,l1,r1,u1,d1>.0)"
    )


def _instantiate(body: Term, params, args) -> Term:
    """Simultaneous substitution of ``args`` for ``params`` in ``body``."""
    params, args = tuple(params), tuple(args)
    avoid = set(all_names(body)) | set(args) | set(params)
    temps = []
    for p in params:
        tmp = fresh_name(avoid, "_p")
        avoid.add(tmp)
        temps.append(tmp)
        body = substitute(body, p, tmp)
    for tmp, a in zip(temps, args):
        body = substitute(body, tmp, a)
    return body


def _apply(template: InP, args) -> Term:
    return _instantiate(template.body, template.binders, args)


def cell(t, l, r, u, d) -> Term:
    """``C(t,l,r,u,d)``."""
    return _apply(cell_template(), (t, l, r, u, d))


def head(t, l, r, u, d) -> Term:
    """``H(t,l,r,u,d)``."""
    return _apply(head_template(), (t, l, r, u, d))


def _prefix(name: str) -> str:
    return f"{name}!<>"


def rule_summand(r) -> str:
    act = "tau" if r.action == TAU else _prefix(action_name(r.action))
    move = "left" if r.move == "L" else "right"
    return (
        f"{act}.write!{datum_name(r.write)}.{_prefix(move)}.read?(f)."
        f"{_prefix(state_name(r.target))}.f!<>.0"
    )


def step_template(m: Rtm, s: str, d: str) -> Term:
    """``S_{s,d}``: one summand per rule for state ``s`` reading ``d``."""
    summands = [rule_summand(r) for r in m.rules if r.state == s and r.read == d]
    return _parse(" + ".join(summands)) if summands else NIL


def control_template(m: Rtm) -> Term:
    """``S``: wait for a state and a datum, then behave as ``S_{s,d}``."""
    branches = []
    for s in m.states:
        inner = []
        for d in m.tape_symbols:
            body = step_template(m, s, d)
            inner.append(InP(datum_name(d), (), body))
        branches.append(InP(state_name(s), (), summation(*inner)))
    return summation(*branches)


def control(m: Rtm, s: str, d: str) -> Term:
    """``Control_{s,d}``; state names are private to the control."""
    return res([state_name(x) for x in m.states], Par((step_template(m, s, d), Bang(control_template(m)))))


def _t(i: int) -> str:
    # link names of cells -1 .. n, shifted to stay nonnegative
    return f"tt{i + 1}"


def _u(i: int) -> str:
    return f"uu{i + 1}"


def cells_term(m: Rtm, tape: TapeInstance) -> Term:
    """``Cells``: cells ``0..n-1`` holding the tape contents, a generator at
    each end and the replicated cell and generator definitions."""
    n = len(tape.cells)
    comps = [left_generator(_t(-1), "ll", _t(0), _u(-1))]
    for i, sym in enumerate(tape.cells):
        comps.append(cell(_t(i), _t(i - 1), _t(i + 1), _u(i), datum_name(sym)))
    comps.append(right_generator(_t(n), _t(n - 1), "rr", _u(n)))
    comps += [Bang(cell_template()), Bang(generator_template())]
    return res(("bl", "br", "c"), Par(comps))


def tape_snapshot(m: Rtm, tape: TapeInstance, state_datum=None) -> Term:
    """``Tape`` for an arbitrary tape instance, with the head in front of
    cell ``tape.head``.

    ``state_datum`` is accepted for symmetry with :func:`configuration_term`
    and checked against the symbol under the head when given.
    """
    if state_datum is not None and state_datum[1] != tape.symbol:
        raise ValueError("datum does not match the symbol under the head")
    n, i = len(tape.cells), tape.head
    head_part = Res("h", Par((head(_t(i), _t(i - 1), _t(i + 1), _u(i), datum_name(tape.symbol)), Bang(head_template()))))
    private = [_t(k) for k in range(-1, n + 1)] + [_u(k) for k in range(-1, n + 1)] + ["ll", "rr"]
    return res(private, Par((head_part, cells_term(m, tape))))


def configuration_term(m: Rtm, config: Configuration) -> Term:
    """``M_{s,δ}``: control and tape with the channels between them and all
    data names made private."""
    tape = config.tape
    body = Par((control(m, config.state, tape.symbol), tape_snapshot(m, tape)))
    private = list(CHANNELS) + [datum_name(d) for d in m.tape_symbols]
    return res(private, body)


@dataclass(frozen=True)
class CompilationOutput:
    term: Term
    name_map: dict
    templates: dict


def compile_rtm(m: Rtm) -> CompilationOutput:
    init = initial_config(m)
    templates = {
        "C": cell_template(),
        "B": generator_template(),
        "H": head_template(),
        "S": control_template(m),
        "Control": control(m, init.state, init.tape.symbol),
        "Cells": cells_term(m, init.tape),
        "Tape": tape_snapshot(m, init.tape),
    }
    term = configuration_term(m, init)
    templates["M"] = term
    return CompilationOutput(normalize(term), name_map(m), templates)


compile = compile_rtm
