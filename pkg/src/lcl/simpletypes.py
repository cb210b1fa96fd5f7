"""Simple types, bases, unification and one-way matching.

Types print fully parenthesized below the top level, ``a -> (b -> a)``;
the parser also accepts the right-associative shorthand ``a -> b -> a``.
Unifiers are plain dicts from variable names to types, always idempotent.
"""
from __future__ import annotations

import re
from collections.abc import Mapping
from typing import Iterable, Iterator

from ._interned import Interned, _set
from .terms import ParseError, _VAR_RE

__all__ = [
    "SimpleType", "TVar", "Arrow", "arrows", "parse_type", "type_vars",
    "Basis", "parse_basis", "UnificationError", "Clash", "OccursFailure",
    "apply_subst", "compose", "unify", "unify_all", "match", "canonicalize", "rename",
    "canonical_names",
]

_TVAR_RE = re.compile(r"[a-z_][A-Za-z0-9_']*")


class SimpleType(Interned):
    __slots__ = ("tv", "size")

    def __str__(self) -> str:
        return _show(self, top=True)

    def __repr__(self) -> str:
        return f"SimpleType({str(self)!r})"


class TVar(SimpleType):
    __slots__ = ("name",)
    __match_args__ = ("name",)

    def _setup(self, name: str):
        if not _TVAR_RE.fullmatch(name):
            raise ValueError(f"invalid type variable {name!r}")
        _set(self, name=name, tv=frozenset((name,)), size=1)

    def _args(self):
        return (self.name,)


class Arrow(SimpleType):
    __slots__ = ("dom", "cod")
    __match_args__ = ("dom", "cod")

    def _setup(self, dom: SimpleType, cod: SimpleType):
        if not isinstance(dom, SimpleType) or not isinstance(cod, SimpleType):
            raise TypeError("Arrow expects two types")
        _set(self, dom=dom, cod=cod, tv=dom.tv | cod.tv,
             size=dom.size + cod.size + 1)

    def _args(self):
        return (self.dom, self.cod)


def arrows(*types: SimpleType) -> SimpleType:
    """``arrows(a, b, c)`` is ``a -> (b -> c)``."""
    out = types[-1]
    for t in reversed(types[:-1]):
        out = Arrow(t, out)
    return out


def type_vars(t: SimpleType) -> frozenset[str]:
    return t.tv


def _show(t: SimpleType, top: bool = False) -> str:
    if isinstance(t, TVar):
        return t.name
    body = f"{_show(t.dom)} -> {_show(t.cod)}"
    return body if top else f"({body})"


_TYPE_TOKEN = re.compile(r"\s*(?:([a-z][A-Za-z0-9_']*)|(->)|(\()|(\)))")


def _type_tokens(text: str, offset: int = 0) -> list[tuple[str, int]]:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        mt = _TYPE_TOKEN.match(text, pos)
        if mt is None:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r} in type", text, bad + offset)
        out.append((mt.group(mt.lastindex), mt.start(mt.lastindex) + offset))
        pos = mt.end()
    return out


def parse_type(text: str) -> SimpleType:
    toks = _type_tokens(text)
    pos = 0

    def atom() -> SimpleType:
        nonlocal pos
        if pos >= len(toks):
            raise ParseError("expected a type", text, len(text))
        tok, at = toks[pos]
        if tok == "(":
            pos += 1
            inner = arrow()
            if pos >= len(toks) or toks[pos][0] != ")":
                raise ParseError("expected ')'", text, at)
            pos += 1
            return inner
        if tok in ("->", ")"):
            raise ParseError(f"unexpected {tok!r}", text, at)
        pos += 1
        return TVar(tok)

    def arrow() -> SimpleType:
        nonlocal pos
        left = atom()
        if pos < len(toks) and toks[pos][0] == "->":
            pos += 1
            return Arrow(left, arrow())
        return left

    result = arrow()
    if pos != len(toks):
        raise ParseError(f"unexpected {toks[pos][0]!r}", text, toks[pos][1])
    return result


# ------------------------------------------------------------------- bases

class Basis(Mapping):
    """An immutable finite map from term variables to types."""

    __slots__ = ("_map", "_hash")

    def __init__(self, entries: Mapping[str, SimpleType] | Iterable[tuple[str, SimpleType]] = ()):
        items = entries.items() if isinstance(entries, Mapping) else entries
        m: dict[str, SimpleType] = {}
        for x, t in items:
            if not _VAR_RE.fullmatch(x):
                raise ValueError(f"invalid basis subject {x!r}")
            if not isinstance(t, SimpleType):
                raise TypeError(f"type expected for {x!r}")
            if x in m and m[x] is not t:
                raise ValueError(f"duplicate declaration for {x!r}")
            m[x] = t
        self._map = dict(sorted(m.items()))
        self._hash = None

    def __getitem__(self, x: str) -> SimpleType:
        return self._map[x]

    def __iter__(self) -> Iterator[str]:
        return iter(self._map)

    def __len__(self) -> int:
        return len(self._map)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._map.items()))
        return self._hash

    def __eq__(self, other) -> bool:
        if isinstance(other, Basis):
            return self._map == other._map
        return NotImplemented

    def __str__(self) -> str:
        return ", ".join(f"{x} : {t}" for x, t in self._map.items())

    def __repr__(self) -> str:
        return f"Basis({str(self)!r})"

    @property
    def type_vars(self) -> frozenset[str]:
        out: frozenset[str] = frozenset()
        for t in self._map.values():
            out |= t.tv
        return out

    def extended(self, x: str, t: SimpleType) -> "Basis":
        return Basis({**self._map, x: t})

    def restrict(self, xs: Iterable[str]) -> "Basis":
        keep = set(xs)
        return Basis({x: t for x, t in self._map.items() if x in keep})


def parse_basis(text: str) -> Basis:
    """Parse ``x : a -> b, y : c``; the empty string is the empty basis."""
    entries = []
    seen = set()
    offset = 0
    for chunk in text.split(","):
        start = offset
        offset += len(chunk) + 1
        if not chunk.strip():
            if text.strip():
                raise ParseError("empty declaration", text, start)
            continue
        if ":" not in chunk:
            raise ParseError("declaration needs ':'", text, start)
        name, _, ty = chunk.partition(":")
        name = name.strip()
        if not _VAR_RE.fullmatch(name):
            raise ParseError(f"invalid subject {name!r}", text, start)
        if name in seen:
            raise ParseError(f"duplicate subject {name!r}", text, start)
        seen.add(name)
        try:
            entries.append((name, parse_type(ty)))
        except ParseError as e:
            pos = None if e.pos is None else start + len(chunk) - len(ty) + e.pos
            raise ParseError(f"bad type for {name}: {e.args[0].rsplit(' at position', 1)[0]}",
                             text, pos) from None
    return Basis(entries)


# ------------------------------------------------------------- unification

class UnificationError(ValueError):
    pass


class Clash(UnificationError):
    pass


class OccursFailure(UnificationError):
    pass


def apply_subst(s: Mapping[str, SimpleType], t: SimpleType) -> SimpleType:
    if not s or not (t.tv & s.keys()):
        return t
    if isinstance(t, TVar):
        return s.get(t.name, t)
    return Arrow(apply_subst(s, t.dom), apply_subst(s, t.cod))


def compose(s2: Mapping[str, SimpleType], s1: Mapping[str, SimpleType]) -> dict[str, SimpleType]:
    """The substitution ``s2 . s1`` (apply ``s1`` first)."""
    out = {v: apply_subst(s2, t) for v, t in s1.items()}
    for v, t in s2.items():
        out.setdefault(v, t)
    return {v: t for v, t in out.items() if not (isinstance(t, TVar) and t.name == v)}


def unify(a: SimpleType, b: SimpleType, rigid: Iterable[str] = ()) -> dict[str, SimpleType]:
    """Most general unifier of ``a`` and ``b``.

    Variables in ``rigid`` behave as constants. Raises :class:`Clash` or
    :class:`OccursFailure`.
    """
    return unify_all([(a, b)], rigid)


def unify_all(pairs: Iterable[tuple[SimpleType, SimpleType]],
              rigid: Iterable[str] = ()) -> dict[str, SimpleType]:
    """Most general simultaneous unifier of all ``pairs``."""
    rigid = frozenset(rigid)
    s: dict[str, SimpleType] = {}
    stack = list(pairs)
    stack.reverse()
    while stack:
        x, y = stack.pop()
        x, y = apply_subst(s, x), apply_subst(s, y)
        if x is y:
            continue
        if isinstance(y, TVar) and y.name not in rigid and not (
                isinstance(x, TVar) and x.name not in rigid):
            x, y = y, x
        if isinstance(x, TVar) and x.name not in rigid:
            if x.name in y.tv:
                raise OccursFailure(f"{x} occurs in {y}")
            s = compose({x.name: y}, s)
        elif isinstance(x, Arrow) and isinstance(y, Arrow):
            stack.append((x.cod, y.cod))
            stack.append((x.dom, y.dom))
        else:
            raise Clash(f"cannot unify {x} with {y}")
    return s


def match(pattern: SimpleType, target: SimpleType,
          fixed: Iterable[str] = ()) -> dict[str, SimpleType] | None:
    """One-way matching: ``s`` with ``apply_subst(s, pattern) is target``.

    Variables of ``fixed`` may only map to themselves. None if no match.
    """
    fixed = frozenset(fixed)
    s: dict[str, SimpleType] = {}
    stack = [(pattern, target)]
    while stack:
        p, t = stack.pop()
        if isinstance(p, TVar):
            if p.name in fixed:
                if p is not t:
                    return None
                continue
            bound = s.get(p.name)
            if bound is None:
                s[p.name] = t
            elif bound is not t:
                return None
        elif isinstance(t, Arrow):
            stack.append((p.cod, t.cod))
            stack.append((p.dom, t.dom))
        else:
            return None
    return s


def canonical_names(avoid: Iterable[str] = ()) -> Iterator[str]:
    """``a, b, ..., z, a1, ..., z1, a2, ...`` skipping ``avoid``."""
    avoid = set(avoid)
    n = 0
    while True:
        suffix = str(n) if n else ""
        for c in "abcdefghijklmnopqrstuvwxyz":
            if c + suffix not in avoid:
                yield c + suffix
        n += 1


def _first_use(t: SimpleType, out: list[str]) -> None:
    if isinstance(t, TVar):
        if t.name not in out:
            out.append(t.name)
    else:
        _first_use(t.dom, out)
        _first_use(t.cod, out)


def rename(t: SimpleType, fixed: Iterable[str] = ()) -> dict[str, SimpleType]:
    """The renaming that :func:`canonicalize` applies to ``t``."""
    fixed = frozenset(fixed)
    order: list[str] = []
    _first_use(t, order)
    names = canonical_names(fixed)
    return {v: TVar(next(names)) for v in order if v not in fixed}


def canonicalize(t: SimpleType, fixed: Iterable[str] = ()) -> SimpleType:
    """Rename the non-fixed variables of ``t`` in first-use order a, b, c, ..."""
    return apply_subst(rename(t, fixed), t)
