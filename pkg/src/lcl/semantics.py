"""Applicative structures, term models and three-valued satisfaction.

The concrete model is the term model over a basis: elements are terms
standing for their extensional-equality classes, application is syntactic
application, element equality is bounded extensional weak equality, and
a term belongs to the carrier of a type when it has that type in CL->=
under the basis. Every query answers with a TriBool.

Model description files hold a bounds header and a basis::

    bounds: fuel=10000, arity=3
    x : a -> b, y : a
"""
from __future__ import annotations

import itertools
import re
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Callable, Generic, Iterable, Mapping, TypeVar

from .assignment import check_typing_eq
from .formulas import Atom, Formula, Implies, Not
from .reduction import ext_equal
from .simpletypes import Arrow, Basis, SimpleType, TVar, parse_basis
from .terms import App, Comb, I, K, S, ParseError, Term, Var
from .verdict import TriBool, Bounds

__all__ = [
    "ApplicativeStructure", "Environment", "TermModel", "term_model",
    "interpret", "SatVerdict", "satisfies", "Violation", "StructureReport",
    "check_structure", "ModelRecord", "NoCounterexampleFound",
    "Counterexample", "semantic_check", "parse_model", "format_model",
]

D = TypeVar("D")


class ApplicativeStructure(ABC, Generic[D]):
    """Domain with application, distinguished s, k, i and typed carriers."""

    @abstractmethod
    def apply(self, d: D, e: D) -> D: ...

    @abstractmethod
    def equal(self, d: D, e: D) -> TriBool: ...

    @abstractmethod
    def member(self, d: D, sigma: SimpleType) -> TriBool: ...

    @property
    @abstractmethod
    def s(self) -> D: ...

    @property
    @abstractmethod
    def k(self) -> D: ...

    @property
    @abstractmethod
    def i(self) -> D: ...


class Environment(Generic[D]):
    """A total map from variables: explicit entries plus a default rule."""

    __slots__ = ("_map", "_default")

    def __init__(self, mapping: Mapping[str, D] | None = None,
                 default: Callable[[str], D] | None = None):
        self._map = dict(mapping or {})
        self._default = default

    def __call__(self, x: str) -> D:
        if x in self._map:
            return self._map[x]
        if self._default is None:
            raise KeyError(f"environment undefined at {x}")
        return self._default(x)

    def updated(self, x: str, d: D) -> "Environment[D]":
        return Environment({**self._map, x: d}, self._default)

    @classmethod
    def rho_star(cls) -> "Environment[Term]":
        """The standard term-model environment ``x |-> x``."""
        return cls({}, Var)


@dataclass(frozen=True)
class TermModel(ApplicativeStructure[Term]):
    basis: Basis = field(default_factory=Basis)
    bounds: Bounds = field(default_factory=Bounds)

    def apply(self, d: Term, e: Term) -> Term:
        return App(d, e)

    def equal(self, d: Term, e: Term) -> TriBool:
        return ext_equal(d, e, self.bounds.fuel, self.bounds.arity)

    def member(self, d: Term, sigma: SimpleType) -> TriBool:
        return check_typing_eq(self.basis, d, sigma, self.bounds.fuel, self.bounds.arity)

    @property
    def s(self) -> Term:
        return S

    @property
    def k(self) -> Term:
        return K

    @property
    def i(self) -> Term:
        return I


def term_model(gamma: Basis | None = None, bounds: Bounds | None = None) -> TermModel:
    return TermModel(gamma if gamma is not None else Basis(), bounds or Bounds())


def interpret(m: Term, env: Environment, a: ApplicativeStructure):
    if isinstance(m, Var):
        return env(m.name)
    if isinstance(m, Comb):
        return {"S": a.s, "K": a.k, "I": a.i}[m.name]
    return a.apply(interpret(m.fun, env, a), interpret(m.arg, env, a))


# ------------------------------------------------------------- satisfaction

@dataclass(frozen=True)
class SatVerdict:
    value: TriBool
    trace: tuple[tuple[Atom, TriBool], ...] = ()

    def to_json(self) -> dict:
        return {**self.value.to_json(),
                "atoms": [{"atom": str(a), **v.to_json()} for a, v in self.trace]}


def satisfies(a: ApplicativeStructure, env: Environment, f: Formula) -> SatVerdict:
    """Kleene evaluation of ``f``; atoms by carrier membership."""
    cache: dict[Atom, TriBool] = {}

    def ev(g: Formula) -> TriBool:
        if isinstance(g, Atom):
            v = cache.get(g)
            if v is None:
                v = cache[g] = a.member(interpret(g.subject, env, a), g.predicate)
            return v
        if isinstance(g, Not):
            return ~ev(g.body)
        return ev(g.ante).implies(ev(g.cons))

    value = ev(f)
    return SatVerdict(value, tuple(sorted(cache.items(), key=lambda kv: str(kv[0]))))


# ---------------------------------------------------------------- structure

@dataclass(frozen=True)
class Violation:
    law: str
    elements: tuple
    detail: str

    def __str__(self) -> str:
        return f"{self.law} fails at ({', '.join(map(str, self.elements))}): {self.detail}"


@dataclass
class StructureReport:
    violations: list[Violation] = field(default_factory=list)
    checked: int = 0
    skipped: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations


_DEFAULT_TYPES = tuple(Arrow(x, y) if y else x for x, y in (
    (TVar("a"), None), (TVar("a"), TVar("a")), (TVar("a"), TVar("b")),
    (Arrow(TVar("a"), TVar("b")), TVar("a"))))


def check_structure(a: ApplicativeStructure, samples: Iterable,
                    types: Iterable[SimpleType] | None = None) -> StructureReport:
    """Check the s/k/i equations and carrier closure on the samples."""
    samples = list(samples)
    types = list(_DEFAULT_TYPES if types is None else types)
    rep = StructureReport()

    def law(name: str, elems: tuple, lhs, rhs):
        v = a.equal(lhs, rhs)
        rep.checked += 1
        if v.is_false:
            rep.violations.append(Violation(name, elems, f"{lhs} differs from {rhs}"))
        elif v.is_unknown:
            rep.skipped += 1

    ap = a.apply
    for d in samples:
        law("i", (d,), ap(a.i, d), d)
    for d, e in itertools.product(samples, repeat=2):
        law("k", (d, e), ap(ap(a.k, d), e), d)
    for d, e, f in itertools.product(samples, repeat=3):
        law("s", (d, e, f), ap(ap(ap(a.s, d), e), f), ap(ap(d, f), ap(e, f)))
    for d, e in itertools.product(samples, repeat=2):
        for sg, tau in itertools.product(types, repeat=2):
            if a.member(d, Arrow(sg, tau)).is_true and a.member(e, sg).is_true:
                v = a.member(ap(d, e), tau)
                rep.checked += 1
                if v.is_false:
                    rep.violations.append(Violation(
                        "closure", (d, e), f"application leaves the carrier of {tau}"))
                elif v.is_unknown:
                    rep.skipped += 1
    return rep


# ---------------------------------------------------------- semantic check

@dataclass(frozen=True)
class ModelRecord:
    basis: Basis
    theory: tuple[SatVerdict, ...]
    goal: SatVerdict

    def to_json(self) -> dict:
        return {"basis": str(self.basis),
                "theory": [v.to_json() for v in self.theory],
                "goal": self.goal.to_json()}


@dataclass(frozen=True)
class NoCounterexampleFound:
    records: tuple[ModelRecord, ...]

    def to_json(self) -> dict:
        return {"verdict": "NoCounterexampleFound",
                "models": [r.to_json() for r in self.records]}


@dataclass(frozen=True)
class Counterexample:
    basis: Basis
    trace: SatVerdict
    records: tuple[ModelRecord, ...]

    def to_json(self) -> dict:
        return {"verdict": "Counterexample", "basis": str(self.basis),
                "models": [r.to_json() for r in self.records]}


def semantic_check(theory: Iterable[Formula], goal: Formula,
                   gammas: Iterable[Basis], bounds: Bounds | None = None,
                   ) -> NoCounterexampleFound | Counterexample:
    """Look for a term model satisfying the theory and falsifying the goal."""
    theory = list(theory)
    bounds = bounds or Bounds()
    env = Environment.rho_star()
    records = []
    found = None
    for g in gammas:
        model = term_model(g, bounds)
        tv = tuple(satisfies(model, env, t) for t in theory)
        gv = satisfies(model, env, goal)
        records.append(ModelRecord(g, tv, gv))
        if found is None and all(v.value.is_true for v in tv) and gv.value.is_false:
            found = (g, gv)
    if found is not None:
        return Counterexample(found[0], found[1], tuple(records))
    return NoCounterexampleFound(tuple(records))


# -------------------------------------------------------------- model file

_BOUNDS = re.compile(r"bounds\s*:\s*(.*)$")


def parse_model(text: str, defaults: Bounds | None = None) -> TermModel:
    """Parse a model description: optional bounds header, then a basis."""
    defaults = defaults or Bounds()
    fuel, arity = defaults.fuel, defaults.arity
    body = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _BOUNDS.match(line)
        if m:
            for part in m.group(1).split(","):
                key, sep, val = part.partition("=")
                key = key.strip()
                if not sep or key not in ("fuel", "arity") or not val.strip().isdigit():
                    raise ParseError(f"bad bounds entry {part.strip()!r}", raw)
                if key == "fuel":
                    fuel = int(val)
                else:
                    arity = int(val)
        else:
            body.append(line)
    return TermModel(parse_basis(", ".join(body)), Bounds(fuel, arity, defaults.depth))


def format_model(model: TermModel) -> str:
    return f"bounds: fuel={model.bounds.fuel}, arity={model.bounds.arity}\n{model.basis}\n"
