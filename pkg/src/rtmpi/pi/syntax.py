"""ASCII surface syntax for π-terms.

Grammar (``|`` loosest, then ``+``, then prefixing)::

    P ::= 0 | tau.P | x!y.P | x!<y1,...,yn>.P | x?(y).P | x?(y1,...,yn).P
        | P|P | P+P | (v x)P | !P | (P)

``x?(y,)`` writes a one-place polyadic input. ``#`` starts a comment.
"""

from __future__ import annotations

import re

from .terms import (
    NIL,
    RESERVED_PREFIX,
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
    is_summand,
)


class PiSyntaxError(ValueError):
    def __init__(self, message, line=None, col=None):
        where = f" at line {line}, column {col}" if line is not None else ""
        super().__init__(message + where)
        self.line = line
        self.col = col


_TOKEN = re.compile(
    r"(?P<ws>\s+|\#[^\n]*)|(?P<name>[A-Za-z_][A-Za-z0-9_']*)|(?P<nil>0)|(?P<sym>[().,|+!?<>])"
)


def _tokenize(text):
    pos, line, line_start = 0, 1, 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise PiSyntaxError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append((kind, m.group(), line, pos - line_start + 1))
        for i, ch in enumerate(m.group()):
            if ch == "\n":
                line += 1
                line_start = pos + i + 1
        pos = m.end()
    tokens.append(("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text, allow_reserved):
        self.toks = _tokenize(text)
        self.i = 0
        self.allow_reserved = allow_reserved

    def peek(self, k=0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise PiSyntaxError(msg, tok[2], tok[3])

    def take(self, value=None, kind=None):
        tok = self.peek()
        if (value is not None and tok[1] != value) or (kind is not None and tok[0] != kind):
            want = value if value is not None else kind
            self.error(f"expected {want!r}, found {tok[1] or 'end of input'!r}")
        self.i += 1
        return tok

    def name(self):
        tok = self.take(kind="name")
        n = tok[1]
        if n == "tau":
            self.error("'tau' is not a name", tok)
        if n.startswith(RESERVED_PREFIX) and not self.allow_reserved:
            self.error(f"name {n!r} uses the reserved prefix {RESERVED_PREFIX!r}", tok)
        return n

    def process(self):
        items = [self.summation()]
        while self.peek()[1] == "|":
            self.i += 1
            items.append(self.summation())
        return items[0] if len(items) == 1 else Par(items)

    def summation(self):
        start = self.peek()
        items = [self.unary()]
        while self.peek()[1] == "+":
            self.take("+")
            items.append(self.unary())
        if len(items) == 1:
            return items[0]
        for it in items:
            if not is_summand(it):
                self.error("summands must be prefixed processes or 0", start)
        return Sum(items)

    def unary(self):
        kind, val, _, _ = self.peek()
        if kind == "nil":
            self.i += 1
            return NIL
        if val == "!":
            self.i += 1
            return Bang(self.unary())
        if val == "(":
            nxt, nxt2 = self.peek(1), self.peek(2)
            if nxt[1] == "v" and nxt2[0] == "name":
                self.i += 2
                names = [self.name()]
                while self.peek()[1] == ",":
                    self.i += 1
                    names.append(self.name())
                self.take(")")
                body = self.unary()
                for n in reversed(names):
                    body = Res(n, body)
                return body
            self.i += 1
            p = self.process()
            self.take(")")
            return p
        if kind == "name" and val == "tau":
            self.i += 1
            self.take(".")
            return Tau(self.unary())
        if kind == "name":
            ch = self.name()
            op = self.peek()[1]
            if op == "!":
                self.i += 1
                if self.peek()[1] == "<":
                    self.i += 1
                    data = self.name_list(">")
                    self.take(".")
                    return OutP(ch, data, self.unary())
                datum = self.name()
                self.take(".")
                return Out(ch, datum, self.unary())
            if op == "?":
                self.i += 1
                self.take("(")
                binders = []
                trailing = False
                while self.peek()[1] != ")":
                    binders.append(self.name())
                    if self.peek()[1] == ",":
                        self.i += 1
                        trailing = self.peek()[1] == ")"
                    elif self.peek()[1] != ")":
                        self.error("expected ',' or ')'")
                self.take(")")
                self.take(".")
                body = self.unary()
                if len(binders) == 1 and not trailing:
                    return In(ch, binders[0], body)
                if len(set(binders)) != len(binders):
                    self.error("repeated binder in polyadic input")
                return InP(ch, binders, body)
            self.error(f"expected '!' or '?' after channel {ch!r}")
        self.error(f"unexpected {val or 'end of input'!r}")

    def name_list(self, close):
        names = []
        while self.peek()[1] != close:
            names.append(self.name())
            if self.peek()[1] == ",":
                self.i += 1
            elif self.peek()[1] != close:
                self.error(f"expected ',' or {close!r}")
        self.take(close)
        return names


def parse_pi(text: str, allow_reserved: bool = False) -> Term:
    """Parse surface syntax. Names with the reserved prefix are rejected
    unless ``allow_reserved`` (used when re-reading rendered states)."""
    p = _Parser(text, allow_reserved)
    term = p.process()
    if p.peek()[0] != "eof":
        p.error(f"trailing input {p.peek()[1]!r}")
    return term


def render(p: Term) -> str:
    """Surface syntax of ``p``; injective on terms and re-parseable with
    ``allow_reserved=True``."""
    out = []
    _render(p, "top", out)
    return "".join(out)


def _render(p, ctx, out):
    t = type(p)
    if t is Nil:
        out.append("0")
    elif t is Tau:
        out.append("tau.")
        _render(p.body, "atom", out)
    elif t is Out:
        out.append(f"{p.channel}!{p.datum}.")
        _render(p.body, "atom", out)
    elif t is In:
        out.append(f"{p.channel}?({p.binder}).")
        _render(p.body, "atom", out)
    elif t is OutP:
        out.append(f"{p.channel}!<{','.join(p.data)}>.")
        _render(p.body, "atom", out)
    elif t is InP:
        inner = ",".join(p.binders) + ("," if len(p.binders) == 1 else "")
        out.append(f"{p.channel}?({inner}).")
        _render(p.body, "atom", out)
    elif t is Res:
        out.append(f"(v {p.binder})")
        _render(p.body, "atom", out)
    elif t is Bang:
        out.append("!")
        _render(p.body, "atom", out)
    elif t is Sum or t is Par:
        sep, inner = (" + ", "sum") if t is Sum else (" | ", "par")
        wrap = ctx == "atom" or (t is Par and ctx != "top") or (t is Sum and ctx == "sum")
        if wrap:
            out.append("(")
        for k, item in enumerate(p.items):
            if k:
                out.append(sep)
            _render(item, inner, out)
        if wrap:
            out.append(")")
    else:
        raise TypeError(t)
