"""LCL formulas: typed-CL statements under negation and implication.

Conjunction, disjunction and equivalence are abbreviations::

    a & b    = ~(a => ~b)
    a | b    = ~a => b
    a <=> b  = (a => b) & (b => a)

Printing parenthesizes atoms under connectives, ``(x : a) => ~(y : b)``,
and leaves a top-level atom bare. ``=>`` associates to the right. The
parser binds ``~`` tightest, then ``&``, ``|``, ``=>``, ``<=>``.
"""
from __future__ import annotations

import re
from functools import lru_cache
from typing import Iterable, Iterator

from ._interned import Interned, _set
from .assignment import atom_in_cl
from .simpletypes import Arrow, SimpleType, TVar
from .terms import App, Comb, I, ParseError, Term, Var

__all__ = [
    "Formula", "Atom", "Not", "Implies", "And", "Or", "Iff", "bottom",
    "atoms", "parse_formula", "parse_statement", "IllFormedFormula",
    "wf_formula", "is_well_formed", "canonical_bottom_atom",
]


class Formula(Interned):
    __slots__ = ("depth", "size")

    def __str__(self) -> str:
        return _show(self, top=True)

    def __repr__(self) -> str:
        return f"Formula({_show(self, top=True)!r})"


class Atom(Formula):
    __slots__ = ("subject", "predicate")
    __match_args__ = ("subject", "predicate")

    def _setup(self, subject: Term, predicate: SimpleType):
        if not isinstance(subject, Term) or not isinstance(predicate, SimpleType):
            raise TypeError("Atom expects a term and a type")
        _set(self, subject=subject, predicate=predicate, depth=1, size=1)

    def _args(self):
        return (self.subject, self.predicate)


class Not(Formula):
    __slots__ = ("body",)
    __match_args__ = ("body",)

    def _setup(self, body: Formula):
        if not isinstance(body, Formula):
            raise TypeError("Not expects a formula")
        _set(self, body=body, depth=body.depth + 1, size=body.size + 1)

    def _args(self):
        return (self.body,)


class Implies(Formula):
    __slots__ = ("ante", "cons")
    __match_args__ = ("ante", "cons")

    def _setup(self, ante: Formula, cons: Formula):
        if not isinstance(ante, Formula) or not isinstance(cons, Formula):
            raise TypeError("Implies expects two formulas")
        _set(self, ante=ante, cons=cons,
             depth=max(ante.depth, cons.depth) + 1, size=ante.size + cons.size + 1)

    def _args(self):
        return (self.ante, self.cons)


def And(a: Formula, b: Formula) -> Formula:
    return Not(Implies(a, Not(b)))


def Or(a: Formula, b: Formula) -> Formula:
    return Implies(Not(a), b)


def Iff(a: Formula, b: Formula) -> Formula:
    return And(Implies(a, b), Implies(b, a))


def canonical_bottom_atom(theory: Iterable[Formula] = ()) -> Atom:
    for f in theory:
        for a in atoms(f):
            return a
    return Atom(I, Arrow(TVar("a"), TVar("a")))


def bottom(theory: Iterable[Formula] = ()) -> Formula:
    """``alpha & ~alpha`` for the theory's first atom (``I : a -> a`` if none)."""
    a = canonical_bottom_atom(theory)
    return And(a, Not(a))


def atoms(f: Formula) -> list[Atom]:
    """Distinct atoms of ``f`` in left-to-right order."""
    out: dict[Atom, None] = {}
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Atom):
            out.setdefault(g)
        elif isinstance(g, Not):
            stack.append(g.body)
        else:
            stack.append(g.cons)
            stack.append(g.ante)
    return list(out)


# ---------------------------------------------------------------- printing

def _show(f: Formula, top: bool = False) -> str:
    if isinstance(f, Atom):
        body = f"{f.subject} : {f.predicate}"
        return body if top else f"({body})"
    if isinstance(f, Not):
        inner = _show(f.body)
        if isinstance(f.body, Implies):
            inner = f"({inner})"
        return "~" + inner
    left = _show(f.ante)
    if isinstance(f.ante, Implies):
        left = f"({left})"
    return f"{left} => {_show(f.cons)}"


# ----------------------------------------------------------------- parsing

_TOKEN = re.compile(
    r"\s*(?:(<=>)|(=>)|(->)|([a-z][A-Za-z0-9_']*)|([SKI])|([()~&|:]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if mt is None:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", text, bad)
        kind = mt.lastindex
        at = mt.start(kind)
        val = mt.group(kind)
        out.append(({4: "id", 5: "comb"}.get(kind, "op"), val, at))
        pos = mt.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.pos = 0

    def peek(self) -> str | None:
        return self.toks[self.pos][1] if self.pos < len(self.toks) else None

    def at(self) -> int:
        return self.toks[self.pos][2] if self.pos < len(self.toks) else len(self.text)

    def fail(self, msg: str):
        raise ParseError(msg, self.text, self.at())

    def expect(self, val: str):
        if self.peek() != val:
            self.fail(f"expected {val!r}")
        self.pos += 1

    # terms
    def term_atom(self) -> Term | None:
        if self.pos >= len(self.toks):
            return None
        kind, val, _ = self.toks[self.pos]
        if kind == "id":
            self.pos += 1
            return Var(val)
        if kind == "comb":
            self.pos += 1
            return Comb(val)
        if val == "(":
            self.pos += 1
            t = self.term()
            self.expect(")")
            return t
        return None

    def term(self) -> Term:
        t = self.term_atom()
        if t is None:
            self.fail("expected a term")
        while (nxt := self.term_atom()) is not None:
            t = App(t, nxt)
        return t

    # types
    def type_atom(self) -> SimpleType:
        if self.peek() == "(":
            self.pos += 1
            t = self.type()
            self.expect(")")
            return t
        if self.pos < len(self.toks) and self.toks[self.pos][0] == "id":
            self.pos += 1
            return TVar(self.toks[self.pos - 1][1])
        self.fail("expected a type")

    def type(self) -> SimpleType:
        left = self.type_atom()
        if self.peek() == "->":
            self.pos += 1
            return Arrow(left, self.type())
        return left

    # formulas
    def statement(self) -> Atom:
        m = self.term()
        self.expect(":")
        return Atom(m, self.type())

    def primary(self) -> Formula:
        start = self.pos
        try:
            return self.statement()
        except ParseError:
            self.pos = start
        if self.peek() != "(":
            self.pos = start
            return self.statement()
        self.pos += 1
        f = self.iff()
        self.expect(")")
        return f

    def unary(self) -> Formula:
        if self.peek() == "~":
            self.pos += 1
            return Not(self.unary())
        return self.primary()

    def conj(self) -> Formula:
        f = self.unary()
        while self.peek() == "&":
            self.pos += 1
            f = And(f, self.unary())
        return f

    def disj(self) -> Formula:
        f = self.conj()
        while self.peek() == "|":
            self.pos += 1
            f = Or(f, self.conj())
        return f

    def imp(self) -> Formula:
        f = self.disj()
        if self.peek() == "=>":
            self.pos += 1
            return Implies(f, self.imp())
        return f

    def iff(self) -> Formula:
        f = self.imp()
        if self.peek() == "<=>":
            self.pos += 1
            return Iff(f, self.iff())
        return f

    def done(self):
        if self.pos != len(self.toks):
            self.fail(f"unexpected {self.peek()!r}")


def parse_formula(text: str) -> Formula:
    """Parse formula text; ``parse_formula(str(f)) is f``."""
    p = _Parser(text)
    f = p.iff()
    p.done()
    return f


def parse_statement(text: str) -> Atom:
    """Parse ``M : sigma``."""
    p = _Parser(text)
    a = p.statement()
    p.done()
    return a


# -------------------------------------------------------- well-formedness

class IllFormedFormula(ValueError):
    def __init__(self, atom: Atom, reason: str):
        self.atom = atom
        self.reason = reason
        super().__init__(f"ill-formed atom {atom}: {reason}")


@lru_cache(maxsize=65536)
def _atom_ok(a: Atom) -> bool:
    return atom_in_cl(a.subject, a.predicate)


def wf_formula(f: Formula) -> None:
    """Raise :class:`IllFormedFormula` at the first atom outside CL->."""
    for a in atoms(f):
        if not _atom_ok(a):
            raise IllFormedFormula(a, f"{a.subject} cannot be assigned type {a.predicate} from any basis")


def is_well_formed(f: Formula) -> bool:
    return all(_atom_ok(a) for a in atoms(f))
