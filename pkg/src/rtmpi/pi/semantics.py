"""Transition relation of the π-calculus with replication.

Transitions are first derived in "late" form: an input step carries its
binder and continuation, and is instantiated only at the top level, once
per name of the :class:`NameUniverse` (plus the free names of the term and
one canonical fresh name). Bound names of steps are renamed whenever they
clash with the free names of the surrounding context, which discharges the
side conditions of the parallel, close, restriction and replication rules.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..lts import TAU_LABEL, FunctionGenerator, bound_output, free_input, free_output
from .normal import normalize, render, simplify
from .terms import (
    RESERVED_PREFIX,
    Bang,
    In,
    Nil,
    Out,
    Par,
    Res,
    Sum,
    Tau,
    Term,
    all_names,
    expand_polyadic,
    free_names,
    fresh_name,
    has_sugar,
    substitute,
)

# step kinds: ("t", target) | ("o", x, y, target) | ("b", x, z, target) | ("i", x, v, body)


@dataclass(frozen=True)
class NameUniverse:
    """Names offered by the environment on free inputs."""

    free_data: frozenset = frozenset()
    fresh_prefix: str = RESERVED_PREFIX

    def __post_init__(self):
        object.__setattr__(self, "free_data", frozenset(self.free_data))
        for n in self.free_data:
            if n.startswith(self.fresh_prefix):
                raise ValueError(f"universe name {n!r} uses the reserved prefix")


EMPTY_UNIVERSE = NameUniverse()


class _Fresh:
    def __init__(self, avoid):
        self.avoid = set(avoid)

    def __call__(self, extra=()):
        n = fresh_name(self.avoid | set(extra), "_r")
        self.avoid.add(n)
        return n


def _avoid(step, names, fresh):
    """Rename the bound name of a bound-output or input step away from
    ``names``."""
    kind = step[0]
    if kind in ("b", "i") and step[2] in names:
        z = fresh(names | all_names(step[3]))
        return (kind, step[1], z, substitute(step[3], step[2], z))
    return step


def _with(step, target):
    if step[0] == "t":
        return ("t", target)
    return (step[0], step[1], step[2], target)


def steps(p: Term, fresh: _Fresh) -> list:
    t = type(p)
    if t is Nil:
        return []
    if t is Tau:
        return [("t", p.body)]
    if t is Out:
        return [("o", p.channel, p.datum, p.body)]
    if t is In:
        return [("i", p.channel, p.binder, p.body)]
    if t is Sum:
        result = []
        for it in p.items:
            result.extend(steps(it, fresh))
        return result
    if t is Par:
        return _par_steps(p, fresh)
    if t is Res:
        return _res_steps(p, fresh)
    if t is Bang:
        return _bang_steps(p, fresh)
    raise TypeError(f"cannot step {t.__name__}; expand polyadic sugar first")


def _replace(items, i, new):
    return Par(items[:i] + (new,) + items[i + 1:])


def _par_steps(p: Par, fresh):
    items = p.items
    n = len(items)
    per = [steps(c, fresh) for c in items]
    others_fn = []
    for i in range(n):
        others_fn.append(frozenset().union(*(free_names(items[j]) for j in range(n) if j != i)))
    result = []
    for i in range(n):
        for st in per[i]:
            st = _avoid(st, others_fn[i], fresh)
            result.append(_with(st, _replace(items, i, st[-1])))
    for i in range(n):
        for si in per[i]:
            if si[0] not in ("o", "b"):
                continue
            for j in range(n):
                if j == i:
                    continue
                for sj in per[j]:
                    if sj[0] != "i" or sj[1] != si[1]:
                        continue
                    if si[0] == "o":
                        received = substitute(sj[3], sj[2], si[2])
                        new = list(items)
                        new[i], new[j] = si[3], received
                        result.append(("t", Par(new)))
                    else:
                        ctx = others_fn[i]
                        so = _avoid(si, ctx, fresh)
                        z = so[2]
                        received = substitute(sj[3], sj[2], z)
                        new = list(items)
                        new[i], new[j] = so[3], received
                        result.append(("t", Res(z, Par(new))))
    return result


def _res_steps(p: Res, fresh):
    z = p.binder
    result = []
    for st in steps(p.body, fresh):
        kind = st[0]
        if kind == "t":
            result.append(("t", Res(z, st[1])))
        elif kind == "o":
            x, y, target = st[1], st[2], st[3]
            if x == z:
                continue
            if y == z:
                result.append(("b", x, z, target))
            else:
                result.append(("o", x, y, Res(z, target)))
        else:
            if st[1] == z:
                continue
            st = _avoid(st, {z}, fresh)
            result.append((kind, st[1], st[2], Res(z, st[3])))
    return result


def _bang_steps(p: Bang, fresh):
    body = p.body
    ctx = free_names(p)
    base = [_avoid(st, ctx, fresh) for st in steps(body, fresh)]
    result = [_with(st, Par((st[-1], p))) for st in base]
    for so in base:
        if so[0] not in ("o", "b"):
            continue
        for si in base:
            if si[0] != "i" or si[1] != so[1]:
                continue
            if so[0] == "o":
                result.append(("t", Par((Par((so[3], substitute(si[3], si[2], so[2]))), p))))
            else:
                z = so[2]
                received = substitute(si[3], si[2], z)
                result.append(("t", Par((Res(z, Par((so[3], received))), p))))
    return result


def canonical_fresh(p: Term, prefix: str = RESERVED_PREFIX) -> str:
    """The name standing for "some name not known to ``p``"."""
    fn = free_names(p)
    k = 0
    while f"{prefix}{k}" in fn:
        k += 1
    return f"{prefix}{k}"


def _successors(p: Term, u: NameUniverse):
    """``(label, target)`` pairs with targets not yet normalized."""
    fresh = _Fresh(all_names(p) | u.free_data)
    fn = free_names(p)
    new_name = canonical_fresh(p, u.fresh_prefix)
    inputs = sorted(u.free_data | fn | {new_name})
    for st in steps(p, fresh):
        kind = st[0]
        if kind == "t":
            yield TAU_LABEL, st[1]
        elif kind == "o":
            yield free_output(st[1], st[2]), st[3]
        elif kind == "b":
            yield bound_output(st[1], new_name), substitute(st[3], st[2], new_name)
        else:
            for n in inputs:
                yield free_input(st[1], n), substitute(st[3], st[2], n)


def _sorted(pairs) -> list:
    return sorted(set(pairs), key=lambda lt: (lt[0].render(), render(lt[1])))


def pi_out(p: Term, u: NameUniverse = EMPTY_UNIVERSE) -> list:
    """All ``(label, normalized target)`` successors of ``p``, sorted."""
    if has_sugar(p):
        p = normalize(p)
    return _sorted((label, normalize(t)) for label, t in _successors(p, u))


def _strip(p):
    names = []
    while type(p) is Res:
        names.append(p.binder)
        p = p.body
    return names, p


def _output_only(p, z) -> bool:
    """Whether every free occurrence of ``z`` in ``p`` is the subject of an
    output."""
    if z not in free_names(p):
        return True
    t = type(p)
    if t is Out:
        return p.datum != z and _output_only(p.body, z)
    if t is In:
        return p.channel != z and _output_only(p.body, z)
    if t is Sum or t is Par:
        return all(_output_only(i, z) for i in p.items)
    return _output_only(p.body, z)


def _server(comp, z):
    """Whether ``comp`` is ``!P`` with ``P`` an input on ``z`` or a sum of
    inputs with exactly one summand on ``z``, and ``z`` otherwise used only
    for output inside ``P``."""
    if type(comp) is not Bang:
        return False
    body = comp.body
    items = body.items if type(body) is Sum else (body,)
    if any(type(i) is not In for i in items):
        return False
    on_z = [i for i in items if i.channel == z]
    if len(on_z) != 1 or any(not _output_only(i, z) for i in items if i.channel != z):
        return False
    i = on_z[0]
    return i.binder == z or _output_only(i.body, z)


def _private_redex(names, comps, fresh):
    """Target of a communication on a restricted name ``z`` that is

    * linear: ``z`` occurs in exactly two components, one an output prefix
      and the other an input prefix (possibly under restrictions), or
    * served: one component replicates the only input on ``z`` and every
      other occurrence of ``z`` is an output subject; the step fires one of
      those outputs that is already a bare prefix,

    or ``None``."""
    for z in names:
        users = [i for i, c in enumerate(comps) if z in free_names(c)]
        cores = {i: _strip(comps[i])[1] for i in users}
        pair = None
        if len(users) == 2:
            kinds = {type(c) for c in cores.values()}
            if kinds == {Out, In} and all(c.channel == z for c in cores.values()):
                pair = users
        if pair is None:
            servers = [i for i in users if _server(comps[i], z)]
            if len(servers) != 1:
                continue
            others = [i for i in users if i != servers[0]]
            if not all(_output_only(comps[i], z) for i in others):
                continue
            senders = [i for i in others if type(cores[i]) is Out and cores[i].channel == z]
            if not senders:
                continue
            pair = [senders[0], servers[0]]
        both = Par((comps[pair[0]], comps[pair[1]]))
        for st in _par_steps(both, fresh):
            if st[0] == "t":
                rest = [c for i, c in enumerate(comps) if i not in pair]
                return Par(rest + [st[1]])
    return None


def _find_private(p, fresh):
    t = type(p)
    if t is Par:
        for i, item in enumerate(p.items):
            new = _find_private(item, fresh)
            if new is not None:
                return _replace(p.items, i, new)
        return None
    if t is Res:
        names, body = _strip(p)
        comps = list(body.items) if type(body) is Par else [body]
        new = _private_redex(names, comps, fresh)
        if new is None:
            for i, c in enumerate(comps):
                inner = _find_private(c, fresh)
                if inner is not None:
                    comps[i] = inner
                    new = Par(comps)
                    break
        if new is None:
            return None
        for n in reversed(names):
            new = Res(n, new)
        return new
    return None


def settle(p: Term, limit: int = 10_000) -> Term:
    """Perform private communications (see :func:`_private_redex`) until
    none is left.

    Such a step is the only move of its sender, leaves the receiver (or the
    replicated server) able to do everything it could before, and commutes
    with every other transition, so it is inert and confluent. Settling
    therefore preserves divergence-preserving branching bisimilarity while
    collapsing the interleavings of polyadic communication and of process
    recreation. A term whose settling steps could go on forever would itself
    diverge through them; this is reported as an error rather than hidden.
    """
    if has_sugar(p):
        p = expand_polyadic(p)
    p = simplify(p)
    for _ in range(limit):
        new = _find_private(p, _Fresh(all_names(p)))
        if new is None:
            return normalize(p)
        p = simplify(new)
    raise RuntimeError("settling did not terminate")


class PiGenerator(FunctionGenerator):
    """Generator of the transition system of a term. With ``settled`` every
    state reached is first settled (see :func:`settle`)."""

    def __init__(self, p: Term, u: NameUniverse = EMPTY_UNIVERSE, normalize_initial: bool = True,
                 settled: bool = False):
        if settled:
            start = settle(p)
            step = lambda q: _sorted((label, settle(t)) for label, t in _successors(q, u))
        else:
            start = normalize(p) if normalize_initial or has_sugar(p) else p
            step = lambda q: pi_out(q, u)
        super().__init__(start, step, render)
        self.universe = u
        self.settled = settled


def pi_generator(p: Term, u: NameUniverse = EMPTY_UNIVERSE, normalize_initial: bool = True,
                 settled: bool = False) -> PiGenerator:
    return PiGenerator(p, u, normalize_initial, settled)
