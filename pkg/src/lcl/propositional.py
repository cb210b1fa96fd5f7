"""Propositional reasoning over LCL formulas.

Atoms are propositional letters, compared by syntactic identity. Small
problems are decided by truth tables, larger ones by DPLL over a Tseitin
encoding.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .formulas import Atom, Formula, Implies, Not, atoms

__all__ = ["evaluate", "Entailed", "Countervaluation", "truth_table_valid",
           "satisfy", "entailed", "is_tautology", "TRUTH_TABLE_LIMIT"]

TRUTH_TABLE_LIMIT = 12


def evaluate(f: Formula, valuation: Mapping[Atom, bool]) -> bool:
    if isinstance(f, Atom):
        return valuation[f]
    if isinstance(f, Not):
        return not evaluate(f.body, valuation)
    return not evaluate(f.ante, valuation) or evaluate(f.cons, valuation)


@dataclass(frozen=True)
class Entailed:
    def __bool__(self) -> bool:
        return True

    def __str__(self) -> str:
        return "Entailed"


@dataclass(frozen=True)
class Countervaluation:
    """A valuation satisfying the theory and falsifying the goal."""
    valuation: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return False

    def __str__(self) -> str:
        body = ", ".join(f"{a} := {'T' if v else 'F'}" for a, v in self.valuation.items())
        return f"Countervaluation({body})"

    def to_json(self) -> dict:
        return {str(a): v for a, v in self.valuation.items()}


def _atoms_of(fs: Iterable[Formula]) -> list[Atom]:
    out: dict[Atom, None] = {}
    for f in fs:
        for a in atoms(f):
            out.setdefault(a)
    return list(out)


def truth_table_valid(theory: Iterable[Formula], goal: Formula) -> Entailed | Countervaluation:
    """Whether every valuation satisfying ``theory`` satisfies ``goal``."""
    theory = list(theory)
    letters = _atoms_of(theory + [goal])
    if len(letters) > TRUTH_TABLE_LIMIT:
        model = satisfy(theory + [Not(goal)])
        return Entailed() if model is None else Countervaluation(
            {a: model.get(a, False) for a in letters})
    for bits in itertools.product((True, False), repeat=len(letters)):
        v = dict(zip(letters, bits))
        if all(evaluate(t, v) for t in theory) and not evaluate(goal, v):
            return Countervaluation(v)
    return Entailed()


def is_tautology(f: Formula) -> bool:
    return bool(truth_table_valid((), f))


def entailed(theory: Iterable[Formula], goal: Formula) -> bool:
    return satisfy(list(theory) + [Not(goal)]) is None


# -------------------------------------------------------------------- DPLL

def _tseitin(formulas: list[Formula]):
    ids: dict[Formula, int] = {}
    clauses: list[list[int]] = []

    def var(f: Formula) -> int:
        v = ids.get(f)
        if v is not None:
            return v
        if isinstance(f, Not):
            v = -var(f.body)
            ids[f] = v
            return v
        v = ids[f] = len(ids) + 1
        if isinstance(f, Implies):
            a, b = var(f.ante), var(f.cons)
            clauses.extend(([-v, -a, b], [a, v], [-b, v]))
        return v

    for f in formulas:
        clauses.append([var(f)])
    return ids, clauses


def _dpll(clauses: list[list[int]], assignment: dict[int, bool]) -> dict[int, bool] | None:
    assignment = dict(assignment)
    while True:
        unit = None
        pending = []
        for c in clauses:
            open_lits = []
            sat = False
            for lit in c:
                val = assignment.get(abs(lit))
                if val is None:
                    open_lits.append(lit)
                elif val == (lit > 0):
                    sat = True
                    break
            if sat:
                continue
            if not open_lits:
                return None
            if len(open_lits) == 1:
                unit = open_lits[0]
                break
            pending.append(open_lits)
        if unit is None:
            break
        assignment[abs(unit)] = unit > 0
    if not pending:
        return assignment
    lit = pending[0][0]
    for choice in (lit > 0, lit < 0):
        assignment[abs(lit)] = choice
        res = _dpll(clauses, assignment)
        if res is not None:
            return res
    return None


def satisfy(formulas: Iterable[Formula]) -> dict[Atom, bool] | None:
    """A valuation of the atoms making every formula true, or None."""
    formulas = list(formulas)
    ids, clauses = _tseitin(formulas)
    model = _dpll(clauses, {})
    if model is None:
        return None
    return {a: model.get(v, False) for a, v in ids.items() if isinstance(a, Atom)}
