"""π-calculus abstract syntax, name sets, capture-avoiding substitution and
the polyadic abbreviations."""

from __future__ import annotations

import weakref
from typing import Iterable

RESERVED_PREFIX = "_"


_TABLE = weakref.WeakValueDictionary()


class _Interned(type):
    """Hash-consing: structurally equal terms are the same object, so
    equality is identity and shared subterms share cached data."""

    def __call__(cls, *args):
        values = cls._prepare(*args)
        key = (cls,) + values
        obj = _TABLE.get(key)
        if obj is None:
            obj = object.__new__(cls)
            for f, v in zip(cls._fields, values):
                object.__setattr__(obj, f, v)
            object.__setattr__(obj, "_key", key)
            object.__setattr__(obj, "_hash", hash((cls.__name__,) + values))
            object.__setattr__(obj, "_fn", None)
            object.__setattr__(obj, "_names", None)
            object.__setattr__(obj, "_sugar", None)
            object.__setattr__(obj, "_dig", None)
            _TABLE[key] = obj
        return obj


class Term(metaclass=_Interned):
    """Immutable process term. Equality is structural (binder names
    included); hash and name sets are cached."""

    __slots__ = ("_key", "_hash", "_fn", "_names", "_sugar", "_dig", "__weakref__")
    _fields: tuple = ()

    @classmethod
    def _prepare(cls, *args):
        return args

    def __setattr__(self, name, value):
        raise AttributeError("terms are immutable")

    def __eq__(self, other):
        return self is other

    def __hash__(self):
        return self._hash

    def __repr__(self):
        from .syntax import render

        return f"<{type(self).__name__} {render(self)}>"

    def __reduce__(self):
        return (type(self), self._key[1:])


class Nil(Term):
    __slots__ = ()


class Tau(Term):
    __slots__ = ("body",)
    _fields = ("body",)


class Out(Term):
    __slots__ = ("channel", "datum", "body")
    _fields = ("channel", "datum", "body")


class In(Term):
    __slots__ = ("channel", "binder", "body")
    _fields = ("channel", "binder", "body")


class Sum(Term):
    __slots__ = ("items",)
    _fields = ("items",)

    @classmethod
    def _prepare(cls, items):
        items = tuple(items)
        for it in items:
            if not is_summand(it):
                raise TypeError(f"summands must be prefixed terms or 0, got {type(it).__name__}")
        return (items,)


class Par(Term):
    __slots__ = ("items",)
    _fields = ("items",)

    @classmethod
    def _prepare(cls, items):
        return (tuple(items),)


class Res(Term):
    __slots__ = ("binder", "body")
    _fields = ("binder", "body")


class Bang(Term):
    __slots__ = ("body",)
    _fields = ("body",)


class OutP(Term):
    """Polyadic output ``x!<y1,...,yn>.P`` (sugar)."""

    __slots__ = ("channel", "data", "body")
    _fields = ("channel", "data", "body")

    @classmethod
    def _prepare(cls, channel, data, body):
        return (channel, tuple(data), body)


class InP(Term):
    """Polyadic input ``x?(z1,...,zn).P`` (sugar)."""

    __slots__ = ("channel", "binders", "body")
    _fields = ("channel", "binders", "body")

    @classmethod
    def _prepare(cls, channel, binders, body):
        binders = tuple(binders)
        if len(set(binders)) != len(binders):
            raise ValueError("polyadic input binders must be distinct")
        return (channel, binders, body)


NIL = Nil()
PREFIXES = (Tau, Out, In, OutP, InP)


def is_summand(p: Term) -> bool:
    """Prefixed terms, ``0`` and sums; restrictions are allowed around a
    prefix because a polyadic output expands to ``(v w)x!w.P``."""
    while type(p) is Res:
        p = p.body
    return isinstance(p, PREFIXES + (Nil, Sum))


def res(names: Iterable[str], body: Term) -> Term:
    """``(v n1)...(v nk)body``."""
    for n in reversed(tuple(names)):
        body = Res(n, body)
    return body


def par(*items: Term) -> Term:
    items = [i for i in items if not isinstance(i, Nil)]
    if not items:
        return NIL
    return items[0] if len(items) == 1 else Par(items)


def summation(*items: Term) -> Term:
    items = [i for i in items if not isinstance(i, Nil)]
    if not items:
        return NIL
    return items[0] if len(items) == 1 else Sum(items)


def free_names(p: Term) -> frozenset:
    fn = p._fn
    if fn is not None:
        return fn
    t = type(p)
    if t is Nil:
        fn = frozenset()
    elif t is Tau or t is Bang:
        fn = free_names(p.body)
    elif t is Out:
        fn = free_names(p.body) | {p.channel, p.datum}
    elif t is In:
        fn = (free_names(p.body) - {p.binder}) | {p.channel}
    elif t is Res:
        fn = free_names(p.body) - {p.binder}
    elif t is Sum or t is Par:
        fn = frozenset().union(*(free_names(i) for i in p.items))
    elif t is OutP:
        fn = free_names(p.body) | {p.channel} | set(p.data)
    elif t is InP:
        fn = (free_names(p.body) - set(p.binders)) | {p.channel}
    else:
        raise TypeError(t)
    object.__setattr__(p, "_fn", fn)
    return fn


def bound_names(p: Term) -> frozenset:
    t = type(p)
    if t is Nil:
        return frozenset()
    if t in (Tau, Bang, Out, OutP):
        return bound_names(p.body)
    if t is In or t is Res:
        return bound_names(p.body) | {p.binder}
    if t is InP:
        return bound_names(p.body) | set(p.binders)
    return frozenset().union(*(bound_names(i) for i in p.items))


def all_names(p: Term) -> frozenset:
    ns = p._names
    if ns is not None:
        return ns
    t = type(p)
    if t is Nil:
        ns = frozenset()
    elif t is Tau or t is Bang:
        ns = all_names(p.body)
    elif t is Out:
        ns = all_names(p.body) | {p.channel, p.datum}
    elif t is In or t is Res:
        ns = all_names(p.body) | {p.binder} | ({p.channel} if t is In else set())
    elif t is OutP:
        ns = all_names(p.body) | {p.channel} | set(p.data)
    elif t is InP:
        ns = all_names(p.body) | {p.channel} | set(p.binders)
    else:
        ns = frozenset().union(*(all_names(i) for i in p.items))
    object.__setattr__(p, "_names", ns)
    return ns


def fresh_name(avoid, prefix: str = "_r") -> str:
    k = 0
    while f"{prefix}{k}" in avoid:
        k += 1
    return f"{prefix}{k}"


def substitute(p: Term, target: str, replacement: str) -> Term:
    """``p{replacement/target}``; binders that would capture the replacement
    are renamed to fresh reserved names first."""
    if target == replacement or target not in free_names(p):
        return p
    return _subst(p, target, replacement)


def _subst(p: Term, x: str, y: str) -> Term:
    if x not in free_names(p):
        return p
    r = lambda n: y if n == x else n
    t = type(p)
    if t is Tau:
        return Tau(_subst(p.body, x, y))
    if t is Bang:
        return Bang(_subst(p.body, x, y))
    if t is Out:
        return Out(r(p.channel), r(p.datum), _subst(p.body, x, y))
    if t is OutP:
        return OutP(r(p.channel), tuple(map(r, p.data)), _subst(p.body, x, y))
    if t is Sum:
        return Sum(_subst(i, x, y) for i in p.items)
    if t is Par:
        return Par(_subst(i, x, y) for i in p.items)
    if t is In or t is Res:
        v, body = p.binder, p.body
        if v == x:
            return In(r(p.channel), v, body) if t is In else p
        if v == y:
            z = fresh_name(all_names(body) | {x, y})
            body = _subst(body, v, z)
            v = z
        body = _subst(body, x, y)
        return In(r(p.channel), v, body) if t is In else Res(v, body)
    if t is InP:
        binders, body = list(p.binders), p.body
        if x in binders:
            return InP(r(p.channel), binders, body)
        for i, v in enumerate(binders):
            if v == y:
                z = fresh_name(all_names(body) | {x, y} | set(binders))
                body = _subst(body, v, z)
                binders[i] = z
        return InP(r(p.channel), binders, _subst(body, x, y))
    raise TypeError(t)


def has_sugar(p: Term) -> bool:
    found = p._sugar
    if found is None:
        t = type(p)
        if t is OutP or t is InP:
            found = True
        elif t is Nil:
            found = False
        elif t is Sum or t is Par:
            found = any(has_sugar(i) for i in p.items)
        else:
            found = has_sugar(p.body)
        object.__setattr__(p, "_sugar", found)
    return found


def expand_polyadic(p: Term) -> Term:
    """Rewrite polyadic prefixes into monadic ones through a private
    channel: ``x!<y1..yn>.P = (v w)x!w.w!y1...w!yn.P`` and
    ``x?(z1..zn).P = x?(w).w?(z1)...w?(zn).P``."""
    t = type(p)
    if t is Nil:
        return p
    if t is Sum:
        return Sum(expand_polyadic(i) for i in p.items)
    if t is Par:
        return Par(expand_polyadic(i) for i in p.items)
    body = expand_polyadic(p.body)
    if t is OutP:
        w = fresh_name(all_names(body) | {p.channel} | set(p.data), "_w")
        for y in reversed(p.data):
            body = Out(w, y, body)
        return Res(w, Out(p.channel, w, body))
    if t is InP:
        w = fresh_name(all_names(body) | {p.channel} | set(p.binders), "_w")
        for z in reversed(p.binders):
            body = In(w, z, body)
        return In(p.channel, w, body)
    if t is Tau:
        return Tau(body)
    if t is Bang:
        return Bang(body)
    if t is Out:
        return Out(p.channel, p.datum, body)
    if t is In:
        return In(p.channel, p.binder, body)
    if t is Res:
        return Res(p.binder, body)
    raise TypeError(t)
