"""Bounded proof search: axiom saturation plus propositional synthesis.

Saturation collects instances of the non-logical schemes Ax1-Ax5 that
talk about the statements of a problem: combinator typings, typing
derivations from the declarations in the theory, application
decompositions, and equalities between subjects of equal type. The
propositional layer then treats those instances as extra premises.
Completeness is relative to the saturation depth.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from . import lam
from .assignment import Untypable, atom_in_cl, check_typing, scheme, typing_derivation
from .formulas import Atom, Formula, Not, atoms, bottom, is_well_formed
from .hilbert import AX_PARAMS, HilbertProof, instantiate
from .propositional import Countervaluation, satisfy
from .reduction import normalize
from .simpletypes import Arrow, Basis, match
from .synthesis import synthesize
from .terms import App, Comb, Var
from .verdict import FALSE, TRUE, Bounds, TriBool, unknown

__all__ = ["AxiomRecord", "Saturation", "saturate", "saturate_axioms",
           "Proved", "Refuted", "Unknown", "entails", "consistent",
           "theory_basis"]

_COMB_AXIOM = {"S": 1, "K": 2, "I": 3}


@dataclass(frozen=True)
class AxiomRecord:
    axiom: int
    inst: tuple
    formula: Formula


@dataclass
class Saturation:
    records: list[AxiomRecord] = field(default_factory=list)
    truncated: list[str] = field(default_factory=list)

    @property
    def formulas(self) -> list[Formula]:
        return [r.formula for r in self.records]


def theory_basis(theory: Iterable[Formula]) -> Basis:
    """Declarations ``x : sigma`` occurring in the theory (first wins)."""
    decl = {}
    for f in theory:
        for a in atoms(f):
            if isinstance(a.subject, Var):
                decl.setdefault(a.subject.name, a.predicate)
    return Basis(decl)


class _Collector:
    def __init__(self, bounds: Bounds):
        self.bounds = bounds
        self.sat = Saturation()
        self.seen: set[Formula] = set()

    def add(self, axiom: int, *values) -> None:
        inst = tuple(zip(AX_PARAMS[axiom], values))
        f = instantiate(axiom, inst)
        if f not in self.seen and is_well_formed(f):
            self.seen.add(f)
            self.sat.records.append(AxiomRecord(axiom, inst, f))

    def comb(self, a: Atom) -> None:
        name = a.subject.name
        s = match(scheme(name), a.predicate)
        if s is not None:
            ax = _COMB_AXIOM[name]
            self.add(ax, *(s[v] for v in "abc"[:len(AX_PARAMS[ax])]))

    def derivation(self, basis: Basis, a: Atom) -> None:
        try:
            root = typing_derivation(basis, a.subject, a.predicate)
        except Untypable:
            return
        for node in root.nodes():
            if node.fun is not None:
                self.add(4, node.fun.term, node.arg.term, node.arg.type, node.type)
            elif isinstance(node.term, Comb):
                self.comb(Atom(node.term, node.type))

    def decompose(self, a: Atom, pool: dict[Atom, None]) -> None:
        m, n = a.subject.fun, a.subject.arg
        for b in pool:
            if b.subject is m and isinstance(b.predicate, Arrow) and b.predicate.cod is a.predicate:
                self.add(4, m, n, b.predicate.dom, a.predicate)
            if b.subject is n:
                self.add(4, m, n, b.predicate, a.predicate)

    def equalities(self, pool: dict[Atom, None]) -> None:
        fuel = self.bounds.fuel
        for a in pool:
            r = normalize(a.subject, fuel)
            if not r.normal:
                self.sat.truncated.append(f"{a.subject} has no normal form within {fuel} steps")
            elif r.term is not a.subject and atom_in_cl(r.term, a.predicate):
                self.add(5, a.subject, r.term, a.predicate)
                self.add(5, r.term, a.subject, a.predicate)
        classes: dict[tuple, list[Atom]] = {}
        for a in pool:
            key = lam.beta_eta_normal(a.subject, fuel)
            if key is None:
                self.sat.truncated.append(f"{a.subject} has no beta-eta normal form within {fuel} steps")
                continue
            classes.setdefault((a.predicate, key), []).append(a)
        for group in classes.values():
            for p in group:
                for q in group:
                    if p is not q:
                        self.add(5, p.subject, q.subject, p.predicate)


def saturate(theory: Iterable[Formula], goal: Formula | None,
             bounds: Bounds | None = None) -> Saturation:
    """Ax1-Ax5 instances about the problem's statements, ``bounds.depth`` rounds."""
    bounds = bounds or Bounds()
    theory = list(theory)
    basis = theory_basis(theory)
    col = _Collector(bounds)
    pool: dict[Atom, None] = {}
    for f in theory + ([goal] if goal is not None else []):
        for a in atoms(f):
            if is_well_formed(a):
                pool.setdefault(a)
    done = 0
    for _ in range(bounds.depth):
        for a in list(pool):
            if isinstance(a.subject, Comb):
                col.comb(a)
            elif isinstance(a.subject, App):
                col.decompose(a, pool)
            if check_typing(basis, a.subject, a.predicate):
                col.derivation(basis, a)
        col.equalities(pool)
        for r in col.sat.records[done:]:
            for a in atoms(r.formula):
                pool.setdefault(a)
        done = len(col.sat.records)
    col.sat.truncated = sorted(set(col.sat.truncated))
    return col.sat


def saturate_axioms(theory: Iterable[Formula], goal: Formula | None,
                    depth: int, bounds: Bounds | None = None) -> list[Formula]:
    """The saturated axiom instances as formulas."""
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    b = bounds or Bounds()
    return saturate(theory, goal, Bounds(b.fuel, b.arity, depth)).formulas


# ----------------------------------------------------------------- entails

@dataclass(frozen=True)
class Proved:
    proof: HilbertProof

    def __str__(self) -> str:
        return "Proved"


@dataclass(frozen=True)
class Refuted:
    """A valuation of the saturated premises falsifying the goal."""
    countervaluation: Countervaluation

    def __str__(self) -> str:
        return f"Refuted ({self.countervaluation})"


@dataclass(frozen=True)
class Unknown:
    reason: str

    def __str__(self) -> str:
        return f"Unknown ({self.reason})"


def _core(fixed: list[Formula], optional: list, formula_of) -> list:
    """Shrink ``optional`` while ``fixed`` + ``optional`` stays unsatisfiable."""
    keep = list(optional)
    i = 0
    while i < len(keep):
        trial = keep[:i] + keep[i + 1:]
        if satisfy(fixed + [formula_of(x) for x in trial]) is None:
            keep = trial
        else:
            i += 1
    return keep


def entails(theory: Iterable[Formula], goal: Formula,
            bounds: Bounds | None = None) -> Proved | Refuted | Unknown:
    """Search for an LCL proof of ``goal`` from ``theory``.

    Proved carries a checkable proof. Refuted means the saturated premises
    do not propositionally entail the goal and no side condition was cut
    short; it is relative to the saturation depth.
    """
    bounds = bounds or Bounds()
    theory = list(theory)
    for f in theory + [goal]:
        if not is_well_formed(f):
            raise ValueError(f"ill-formed formula {f}")
    sat = saturate(theory, goal, bounds)
    premises: list = [("T", f) for f in theory] + [("A", r) for r in sat.records]
    form = lambda p: p[1] if p[0] == "T" else p[1].formula
    model = satisfy([form(p) for p in premises] + [Not(goal)])
    if model is None:
        core = _core([Not(goal)], premises, form)
        proof = synthesize(
            theory, goal,
            axioms=[(p[1].axiom, p[1].inst) for p in core if p[0] == "A"],
            premises=[p[1] for p in core if p[0] == "T"])
        return Proved(proof)
    if sat.truncated:
        return Unknown("; ".join(sat.truncated))
    letters = {}
    for f in theory + [goal]:
        for a in atoms(f):
            letters.setdefault(a, model.get(a, False))
    return Refuted(Countervaluation(letters))


def consistent(theory: Iterable[Formula], bounds: Bounds | None = None) -> TriBool:
    """False if the theory proves bottom; True if its saturation is satisfiable."""
    theory = list(theory)
    r = entails(theory, bottom(theory), bounds)
    if isinstance(r, Proved):
        return FALSE
    if isinstance(r, Refuted):
        return TRUE
    return unknown(r.reason)
