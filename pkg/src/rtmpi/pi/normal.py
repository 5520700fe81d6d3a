"""Canonical representatives modulo structural congruence.

Two passes. ``simplify`` removes ``0`` components, flattens sums and
parallel compositions, drops unused restrictions and pushes every
restriction down to the smallest group of components that needs it.
``canonical`` then names binders by binding depth (``_v<depth>``) and sorts
summands and parallel components by a structural digest.

A group of restrictions over several components has no syntactic order, so
its names are ranked by colour refinement: a name is described by the
components it occurs in and by its role there, with every bound name
abstracted away. Names that stay tied after refinement are individualized
one at a time and the smallest resulting term is kept.
"""

from __future__ import annotations

import hashlib
from functools import lru_cache

from .syntax import render as _render
from .terms import (
    NIL,
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

BINDER_PREFIX = "_v"
# individualization branches explored per restriction group before giving up
# on canonicity and keeping the best candidate so far
SEARCH_LIMIT = 64
_MAX_CACHE = 200_000
_canon_cache: dict = {}
_simplify_cache: dict = {}
_color_cache: dict = {}


@lru_cache(maxsize=4096)
def render(p: Term) -> str:
    return _render(p)


def _h(*parts) -> bytes:
    data = b"\x1f".join(x if isinstance(x, bytes) else x.encode() for x in parts)
    return hashlib.blake2b(data, digest_size=12).digest()


def digest(p: Term) -> bytes:
    """Deterministic structural fingerprint, used as the sort key of
    canonical components."""
    d = p._dig
    if d is not None:
        return d
    t = type(p)
    if t is Nil:
        d = _h("0")
    elif t is Tau or t is Bang:
        d = _h(t.__name__, digest(p.body))
    elif t is Out:
        d = _h("o", p.channel, p.datum, digest(p.body))
    elif t is In:
        d = _h("i", p.channel, p.binder, digest(p.body))
    elif t is Res:
        d = _h("v", p.binder, digest(p.body))
    elif t is Sum or t is Par:
        d = _h(t.__name__, *(digest(i) for i in p.items))
    else:
        d = _h(t.__name__, repr(p._key[1:-1]), digest(p.body))
    object.__setattr__(p, "_dig", d)
    return d


def _store(cache, key, value):
    if len(cache) > _MAX_CACHE:
        cache.clear()
    cache[key] = value
    return value


# ---------------------------------------------------------------- simplify


def simplify(p: Term) -> Term:
    hit = _simplify_cache.get(p)
    if hit is not None:
        return hit
    return _store(_simplify_cache, p, _simplify(p))


def _simplify(p: Term) -> Term:
    t = type(p)
    if t is Nil:
        return NIL
    if t is Tau:
        return Tau(simplify(p.body))
    if t is Out:
        return Out(p.channel, p.datum, simplify(p.body))
    if t is In:
        return In(p.channel, p.binder, simplify(p.body))
    if t is Bang:
        body = simplify(p.body)
        return NIL if type(body) is Nil else Bang(body)
    if t is Sum:
        items = []
        for it in p.items:
            it = simplify(it)
            if type(it) is Sum:
                items.extend(it.items)
            elif type(it) is not Nil:
                items.append(it)
        return _collapse(Sum, items)
    if t is Par:
        return _collapse(Par, _flat(simplify(i) for i in p.items))
    if t is Res:
        names = []
        while type(p) is Res:
            if p.binder in names:
                names.remove(p.binder)
            names.append(p.binder)
            p = p.body
        return _restrict(names, _flat([simplify(p)]))
    raise TypeError(f"cannot simplify {t.__name__}; expand polyadic sugar first")


def _flat(items):
    out = []
    for it in items:
        if type(it) is Par:
            out.extend(it.items)
        elif type(it) is not Nil:
            out.append(it)
    return out


def _collapse(cls, items):
    if not items:
        return NIL
    if len(items) == 1:
        return items[0]
    return cls(items)


def _chain(p):
    names = []
    while type(p) is Res:
        names.append(p.binder)
        p = p.body
    return names, p


def _extrude(comps, names):
    """Lift the restrictions of components that are themselves restricted
    parallel compositions into the enclosing group, renaming on clashes, so
    that differently nested but congruent scopes meet the same narrowing."""
    taken = set(names).union(*(all_names(c) for c in comps))
    out = []
    names = list(names)
    todo = list(comps)
    while todo:
        c = todo.pop(0)
        inner, body = _chain(c)
        if not inner or type(body) is not Par:
            out.append(c)
            continue
        for m in inner:
            if m in names or any(m in free_names(x) for x in out + todo):
                z = fresh_name(taken, "_e")
                taken.add(z)
                body = substitute(body, m, z)
                m = z
            names.append(m)
        todo[:0] = body.items
    return out, names


def _restrict(names, comps) -> Term:
    """``(v names)(comps)`` with every restriction narrowed as far as the
    components allow; ``comps`` are simplified and flat."""
    comps = list(comps)
    names = list(names)
    if len(comps) > 1:
        comps, names = _extrude(comps, names)
    used = set().union(*(free_names(c) for c in comps))
    names = [n for n in names if n in used]
    if len(comps) == 1:
        inner_names, body = _chain(comps[0])
        if inner_names:
            return _restrict(names + inner_names, _flat([body]))
        for n in reversed(names):
            body = Res(n, body)
        return body
    changed = True
    while changed:
        changed = False
        for n in list(names):
            users = [i for i, c in enumerate(comps) if n in free_names(c)]
            if len(users) > 1:
                continue
            names.remove(n)
            changed = True
            i = users[0]
            comps[i:i + 1] = _flat([_restrict([n], [comps[i]])])
    bound = set(names)
    parent = list(range(len(comps)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    owner = {}
    for i, c in enumerate(comps):
        for n in free_names(c) & bound:
            if n in owner:
                parent[find(i)] = find(owner[n])
            else:
                owner[n] = i
    groups = {}
    slots = []
    for i, c in enumerate(comps):
        if not free_names(c) & bound:
            slots.append(c)
            continue
        root = find(i)
        if root not in groups:
            groups[root] = []
            slots.append(groups[root])
        groups[root].append(c)
    out = []
    for item in slots:
        if isinstance(item, list):
            used = set().union(*(free_names(c) for c in item))
            inner = _collapse(Par, item)
            for n in reversed([n for n in names if n in used]):
                inner = Res(n, inner)
            out.append(inner)
        else:
            out.append(item)
    return _collapse(Par, out)


# ---------------------------------------------------------------- colours


def _colors(p: Term, lit: frozenset):
    """``(plain, marks)``: a fingerprint of ``p`` in which every name outside
    ``lit`` reads as ``*``, and for each such free name ``x`` the same
    fingerprint with ``x`` singled out."""
    key = (p, lit)
    hit = _color_cache.get(key)
    if hit is not None:
        return hit
    t = type(p)
    hidden = free_names(p) - lit
    tok = lambda n: n if n in lit else "*"
    mark = lambda n, x: "#" if n == x else tok(n)
    if t is Nil:
        res = (_h("0"), {})
    elif t is Tau or t is Bang:
        b0, bm = _colors(p.body, lit)
        tag = t.__name__
        res = (_h(tag, b0), {x: _h(tag, bm[x]) for x in hidden})
    elif t is Out:
        b0, bm = _colors(p.body, lit & free_names(p.body))
        c, d = p.channel, p.datum
        res = (
            _h("o", tok(c), tok(d), b0),
            {x: _h("o", mark(c, x), mark(d, x), bm.get(x, b0)) for x in hidden},
        )
    elif t is In or t is Res:
        v = p.binder
        b0, bm = _colors(p.body, (lit & free_names(p.body)) - {v})
        own = bm.get(v, b0)
        if t is In:
            c = p.channel
            res = (
                _h("i", tok(c), own),
                {x: _h("i", mark(c, x), b0 if x == v else bm.get(x, b0)) for x in hidden},
            )
        else:
            res = (_h("v", own), {x: _h("v", bm.get(x, b0)) for x in hidden})
    elif t is Sum or t is Par:
        parts = [_colors(i, lit & free_names(i)) for i in p.items]
        tag = t.__name__
        res = (
            _h(tag, *sorted(c0 for c0, _ in parts)),
            {x: _h(tag, *sorted(m.get(x, c0) for c0, m in parts)) for x in hidden},
        )
    else:
        raise TypeError(f"cannot colour {t.__name__}")
    return _store(_color_cache, key, res)


def _rank(values: dict) -> dict:
    order = {v: i for i, v in enumerate(sorted(set(values.values())))}
    return {k: order[v] for k, v in values.items()}


def _refine(rank, names_of, users, marks, plain):
    while True:
        sig = {i: (plain[i], tuple(sorted((marks[i][m], rank[m]) for m in ns))) for i, ns in names_of.items()}
        crank = _rank(sig)
        new = _rank({n: (rank[n], tuple(sorted((marks[i][n], crank[i]) for i in users[n]))) for n in rank})
        if len(set(new.values())) == len(set(rank.values())):
            return new
        rank = new


def _orders(names, comps, lit_of):
    """Candidate orders of the group ``names``; more than one only when
    refinement leaves ties."""
    plain, marks = {}, {}
    for i, c in enumerate(comps):
        plain[i], marks[i] = _colors(c, lit_of(c))
    names_of = {i: [n for n in names if n in marks[i]] for i in range(len(comps))}
    users = {n: [i for i in range(len(comps)) if n in marks[i]] for n in names}
    start = _rank({n: tuple(sorted(marks[i][n] for i in users[n])) for n in names})
    leaves = []

    def search(rank):
        if len(leaves) >= SEARCH_LIMIT:
            return
        rank = _refine(rank, names_of, users, marks, plain)
        classes = {}
        for n, r in rank.items():
            classes.setdefault(r, []).append(n)
        tied = [r for r, ns in classes.items() if len(ns) > 1]
        if not tied:
            leaves.append(sorted(names, key=rank.__getitem__))
            return
        for n in sorted(classes[min(tied)]):
            search(_rank({m: (r, 0 if m == n else 1) for m, r in rank.items()}))

    search(start)
    return leaves


# ---------------------------------------------------------------- canonical


def _level(depth: int) -> str:
    return f"{BINDER_PREFIX}{depth}"


def canonical(p: Term, ren: dict = None, depth: int = 0) -> Term:
    """Rename binders by depth and sort components of a simplified term;
    ``ren`` maps free names that are bound further out to their levels."""
    ren = ren or {}
    fn = free_names(p)
    key = (p, tuple(sorted((k, v) for k, v in ren.items() if k in fn)), depth)
    hit = _canon_cache.get(key)
    if hit is not None:
        return hit
    return _store(_canon_cache, key, _canon(p, ren, depth))


def _canon(p, ren, depth):
    t = type(p)
    if t is Nil:
        return NIL
    if t is Tau:
        return Tau(canonical(p.body, ren, depth))
    if t is Bang:
        return Bang(canonical(p.body, ren, depth))
    if t is Out:
        return Out(ren.get(p.channel, p.channel), ren.get(p.datum, p.datum), canonical(p.body, ren, depth))
    if t is In:
        nv = _level(depth)
        return In(ren.get(p.channel, p.channel), nv, canonical(p.body, {**ren, p.binder: nv}, depth + 1))
    if t is Sum or t is Par:
        return t(sorted((canonical(i, ren, depth) for i in p.items), key=digest))
    if t is Res:
        return _canon_res(p, ren, depth)
    raise TypeError(f"cannot canonicalize {t.__name__}; expand polyadic sugar first")


def _canon_res(p, ren, depth):
    names = []
    while type(p) is Res:
        if p.binder in names:
            names.remove(p.binder)
        names.append(p.binder)
        p = p.body
    comps = list(p.items) if type(p) is Par else [p]
    k = len(names)
    levels = [_level(depth + i) for i in range(k)]
    inner = depth + k
    if k == 1:
        orders = [names]
    else:
        hidden = set(ren) | set(names)
        orders = _orders(names, comps, lambda c: free_names(c) - hidden)
    best = None
    for order in orders:
        sub = {**ren, **dict(zip(order, levels))}
        body = _collapse(Par, sorted((canonical(c, sub, inner) for c in comps), key=digest))
        for lv in reversed(levels):
            body = Res(lv, body)
        if best is None or digest(body) < digest(best):
            best = body
    return best


def normalize(p: Term) -> Term:
    """Canonical representative of ``p`` (polyadic sugar is expanded
    first)."""
    if has_sugar(p):
        p = expand_polyadic(p)
    return canonical(simplify(p))


def alpha_eq(p: Term, q: Term) -> bool:
    return normalize(p) is normalize(q)


def clear_caches():
    _canon_cache.clear()
    _simplify_cache.clear()
    _color_cache.clear()
    render.cache_clear()
