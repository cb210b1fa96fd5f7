"""Combinatory logic terms over the basis S, K, I.

Terms are interned binary trees; ``App(f, a)`` is ``f`` applied to ``a``.
Every node caches its free variables, size, and whether it is in weak
normal form, which keeps the reducer from re-scanning normal subterms.

Text syntax: variables are lowercase identifiers, combinators are the
letters ``S``, ``K``, ``I``, application is juxtaposition (left
associative) and parentheses group. ``SKK`` is read as ``S K K``.
"""
from __future__ import annotations

import re
from typing import Iterable, Iterator

from ._interned import Interned, _set

__all__ = [
    "Term", "Var", "Comb", "App", "S", "K", "I",
    "ARITY", "ParseError", "parse_term", "free_vars", "substitute",
    "apply_all", "spine", "fresh_vars", "subterms",
]

ARITY = {"S": 3, "K": 2, "I": 1}


class ParseError(ValueError):
    """Raised for malformed term, type, basis, formula or proof text."""

    def __init__(self, message: str, text: str = "", pos: int | None = None):
        self.text = text
        self.pos = pos
        if pos is not None:
            message = f"{message} at position {pos}"
        super().__init__(message)


class Term(Interned):
    __slots__ = ("fv", "size", "normal", "head", "nargs")

    def __str__(self) -> str:
        return _show(self)

    def __repr__(self) -> str:
        return f"Term({_show(self)!r})"

    def __call__(self, *args: "Term") -> "Term":
        return apply_all(self, args)


class Var(Term):
    __slots__ = ("name",)
    __match_args__ = ("name",)

    def _setup(self, name: str):
        if not _VAR_RE.fullmatch(name):
            raise ValueError(f"invalid variable name {name!r}")
        _set(self, name=name, fv=frozenset((name,)), size=1, normal=True,
             head=self, nargs=0)

    def _args(self):
        return (self.name,)


class Comb(Term):
    __slots__ = ("name",)
    __match_args__ = ("name",)

    def _setup(self, name: str):
        if name not in ARITY:
            raise ValueError(f"unknown combinator {name!r}")
        _set(self, name=name, fv=frozenset(), size=1, normal=True,
             head=self, nargs=0)

    def _args(self):
        return (self.name,)


class App(Term):
    __slots__ = ("fun", "arg")
    __match_args__ = ("fun", "arg")

    def _setup(self, fun: Term, arg: Term):
        if not isinstance(fun, Term) or not isinstance(arg, Term):
            raise TypeError("App expects two terms")
        head = fun.head
        nargs = fun.nargs + 1
        redex = isinstance(head, Comb) and nargs == ARITY[head.name]
        _set(self, fun=fun, arg=arg,
             fv=fun.fv | arg.fv if arg.fv else fun.fv,
             size=fun.size + arg.size + 1,
             normal=fun.normal and arg.normal and not redex,
             head=head, nargs=nargs)

    def _args(self):
        return (self.fun, self.arg)


S = Comb("S")
K = Comb("K")
I = Comb("I")

_VAR_RE = re.compile(r"[a-z][A-Za-z0-9_']*")


def apply_all(head: Term, args: Iterable[Term]) -> Term:
    for a in args:
        head = App(head, a)
    return head


def spine(m: Term) -> tuple[Term, list[Term]]:
    """Split ``h a1 ... an`` into ``(h, [a1, ..., an])``."""
    args = []
    while isinstance(m, App):
        args.append(m.arg)
        m = m.fun
    args.reverse()
    return m, args


def free_vars(m: Term) -> frozenset[str]:
    return m.fv


def subterms(m: Term) -> Iterator[Term]:
    """Distinct subterms of ``m`` in preorder."""
    seen = set()
    stack = [m]
    while stack:
        t = stack.pop()
        if t in seen:
            continue
        seen.add(t)
        yield t
        if isinstance(t, App):
            stack.append(t.arg)
            stack.append(t.fun)


def substitute(m: Term, x: str, n: Term) -> Term:
    """Replace every occurrence of the variable ``x`` in ``m`` by ``n``."""
    if x not in m.fv:
        return m
    memo: dict[Term, Term] = {}

    def go(t: Term) -> Term:
        if x not in t.fv:
            return t
        if isinstance(t, Var):
            return n
        r = memo.get(t)
        if r is None:
            r = memo[t] = App(go(t.fun), go(t.arg))
        return r

    return go(m)


def fresh_vars(avoid: Iterable[str], count: int, stem: str = "v") -> list[str]:
    """``count`` distinct names ``v0, v1, ...`` not in ``avoid``."""
    avoid = set(avoid)
    out: list[str] = []
    i = 0
    while len(out) < count:
        name = f"{stem}{i}"
        if name not in avoid:
            out.append(name)
        i += 1
    return out


# ---------------------------------------------------------------- printing

def _show(m: Term) -> str:
    if isinstance(m, (Var, Comb)):
        return m.name
    head, args = spine(m)
    parts = [_show(head)]
    for a in args:
        parts.append(f"({_show(a)})" if isinstance(a, App) else _show(a))
    return " ".join(parts)


# ----------------------------------------------------------------- parsing

_TOKEN_RE = re.compile(r"\s*(?:([a-z][A-Za-z0-9_']*)|([SKI])|(\()|(\)))")


def _tokens(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        mt = _TOKEN_RE.match(text, pos)
        if mt is None or mt.end() == pos:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", text, bad)
        start = mt.start(mt.lastindex)
        if mt.group(1):
            out.append(("var", mt.group(1), start))
        elif mt.group(2):
            out.append(("comb", mt.group(2), start))
        else:
            out.append(("punct", mt.group(mt.lastindex), start))
        pos = mt.end()
    return out


def parse_term(text: str) -> Term:
    """Parse the text syntax; ``parse_term(str(t)) is t`` for every term."""
    toks = _tokens(text)
    pos = 0

    def atom() -> Term | None:
        nonlocal pos
        if pos >= len(toks):
            return None
        kind, val, at = toks[pos]
        if kind == "var":
            pos += 1
            return Var(val)
        if kind == "comb":
            pos += 1
            return Comb(val)
        if val == "(":
            pos += 1
            inner = application()
            if pos >= len(toks) or toks[pos][1] != ")":
                raise ParseError("expected ')'", text, at)
            pos += 1
            return inner
        return None

    def application() -> Term:
        first = atom()
        if first is None:
            at = toks[pos][2] if pos < len(toks) else len(text)
            raise ParseError("expected a term", text, at)
        while True:
            nxt = atom()
            if nxt is None:
                return first
            first = App(first, nxt)

    result = application()
    if pos != len(toks):
        raise ParseError(f"unexpected {toks[pos][1]!r}", text, toks[pos][2])
    return result
