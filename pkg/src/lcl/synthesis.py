"""Hilbert proof synthesis for propositional entailments.

The search is an analytic tableau that builds natural-deduction proof
terms: implication introduction (``Lam``) over local assumptions, modus
ponens, and a small library of derived rules proved from Ax6-Ax8. Proof
terms are then compiled to Hilbert lines by discharging each assumption
the way bracket abstraction removes a variable: Ax6 plays K, Ax7 plays S,
the identity proof plays I.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterable

from ._interned import Interned, _set
from .formulas import Formula, Implies, Not
from .hilbert import AX_PARAMS, HilbertProof, ProofBuilder, instantiate
from .propositional import Countervaluation, truth_table_valid

__all__ = ["NotEntailed", "synthesize_proof", "synthesize"]


class NotEntailed(ValueError):
    def __init__(self, counter: Countervaluation):
        self.countervaluation = counter
        super().__init__(f"goal is not entailed: {counter}")


# -------------------------------------------------------------- proof terms

class _PT(Interned):
    __slots__ = ("formula", "deps")


class Premise(_PT):
    """A theory formula, emitted as a hypothesis line."""
    __slots__ = ("f",)

    def _setup(self, f):
        _set(self, f=f, formula=f, deps=frozenset())

    def _args(self):
        return (self.f,)


class Axiom(_PT):
    __slots__ = ("axiom", "inst")

    def _setup(self, axiom, inst):
        _set(self, axiom=axiom, inst=inst, formula=instantiate(axiom, inst),
             deps=frozenset())

    def _args(self):
        return (self.axiom, self.inst)


class Assume(_PT):
    __slots__ = ("f",)

    def _setup(self, f):
        _set(self, f=f, formula=f, deps=frozenset((f,)))

    def _args(self):
        return (self.f,)


class MP(_PT):
    __slots__ = ("imp", "arg")

    def _setup(self, imp, arg):
        f = imp.formula
        if not (isinstance(f, Implies) and f.ante is arg.formula):
            raise ValueError(f"cannot apply {f} to {arg.formula}")
        _set(self, imp=imp, arg=arg, formula=f.cons, deps=imp.deps | arg.deps)

    def _args(self):
        return (self.imp, self.arg)


class Lam(_PT):
    __slots__ = ("a", "body")

    def _setup(self, a, body):
        _set(self, a=a, body=body, formula=Implies(a, body.formula),
             deps=body.deps - {a})

    def _args(self):
        return (self.a, self.body)


class Identity(_PT):
    __slots__ = ("a",)

    def _setup(self, a):
        _set(self, a=a, formula=Implies(a, a), deps=frozenset())

    def _args(self):
        return (self.a,)


def _ax(axiom: int, *values) -> Axiom:
    return Axiom(axiom, tuple(zip(AX_PARAMS[axiom], values)))


def _mp(imp: _PT, *args: _PT) -> _PT:
    for a in args:
        imp = MP(imp, a)
    return imp


# ------------------------------------------------------------ derived rules

def _raa(g: Formula, b: Formula, t_notb: _PT, t_b: _PT) -> _PT:
    """``g`` from proofs of ``~g => ~b`` and ``~g => b`` (Ax8)."""
    return _mp(_ax(8, g, b), t_notb, t_b)


@lru_cache(maxsize=None)
def dn_elim(a: Formula) -> _PT:
    """``~~a => a``."""
    nna, na = Not(Not(a)), Not(a)
    return Lam(nna, _raa(a, na, Lam(na, Assume(nna)), Identity(na)))


@lru_cache(maxsize=None)
def efq(a: Formula, b: Formula) -> _PT:
    """``~a => (a => b)``."""
    na, nb = Not(a), Not(b)
    return Lam(na, Lam(a, _raa(b, a, Lam(nb, Assume(na)), Lam(nb, Assume(a)))))


@lru_cache(maxsize=None)
def dn_intro(a: Formula) -> _PT:
    """``a => ~~a``."""
    nnna = Not(Not(Not(a)))
    body = _raa(Not(Not(a)), a,
                Lam(nnna, MP(dn_elim(Not(a)), Assume(nnna))),
                Lam(nnna, Assume(a)))
    return Lam(a, body)


@lru_cache(maxsize=None)
def mt(a: Formula, b: Formula) -> _PT:
    """``(a => b) => (~b => ~a)``."""
    ab, nb, nna = Implies(a, b), Not(b), Not(Not(a))
    body = _raa(Not(a), b, Lam(nna, Assume(nb)),
                Lam(nna, MP(Assume(ab), MP(dn_elim(a), Assume(nna)))))
    return Lam(ab, Lam(nb, body))


@lru_cache(maxsize=None)
def neg_imp(a: Formula, b: Formula) -> _PT:
    """``a => (~b => ~(a => b))``."""
    g = Not(Implies(a, b))
    ng = Not(g)
    body = _raa(g, b, Lam(ng, Assume(Not(b))),
                Lam(ng, MP(MP(dn_elim(Implies(a, b)), Assume(ng)), Assume(a))))
    return Lam(a, Lam(Not(b), body))


@lru_cache(maxsize=None)
def imp_ant(a: Formula, b: Formula) -> _PT:
    """``~(a => b) => a``."""
    nab, na = Not(Implies(a, b)), Not(a)
    body = _raa(a, Implies(a, b), Lam(na, Assume(nab)),
                Lam(na, Lam(a, _mp(efq(a, b), Assume(na), Assume(a)))))
    return Lam(nab, body)


@lru_cache(maxsize=None)
def imp_neg(a: Formula, b: Formula) -> _PT:
    """``~(a => b) => ~b``."""
    nab, nnb = Not(Implies(a, b)), Not(Not(b))
    body = _raa(Not(b), Implies(a, b), Lam(nnb, Assume(nab)),
                Lam(nnb, Lam(a, MP(dn_elim(b), Assume(nnb)))))
    return Lam(nab, body)


@lru_cache(maxsize=None)
def cases(a: Formula, b: Formula) -> _PT:
    """``(a => b) => ((~a => b) => b)``."""
    ab, nab_, nb = Implies(a, b), Implies(Not(a), b), Not(b)
    t_na = _mp(mt(a, b), Assume(ab), Assume(nb))
    t_nna = _mp(mt(Not(a), b), Assume(nab_), Assume(nb))
    body = _raa(b, Not(a), Lam(nb, t_nna), Lam(nb, t_na))
    return Lam(ab, Lam(nab_, body))


def contra(target: Formula, b: Formula, t_b: _PT, t_nb: _PT) -> _PT:
    """``target`` from proofs of ``b`` and ``~b``."""
    return _mp(efq(b, target), t_nb, t_b)


# ------------------------------------------------------------------ tableau

class _Open(Exception):
    """The branch has a model; nothing to refute."""


def _close(facts: dict[Formula, _PT]) -> tuple[Formula, _PT, _PT] | None:
    """Apply the deterministic rules to a fixpoint; report a clash."""
    changed = True
    while changed:
        changed = False
        for f, t in list(facts.items()):
            if isinstance(f, Not):
                if f.body in facts:
                    return f.body, facts[f.body], t
                inner = f.body
                if isinstance(inner, Not) and inner.body not in facts:
                    facts[inner.body] = MP(dn_elim(inner.body), t)
                    changed = True
                elif isinstance(inner, Implies):
                    a, b = inner.ante, inner.cons
                    if a not in facts:
                        facts[a] = MP(imp_ant(a, b), t)
                        changed = True
                    if Not(b) not in facts:
                        facts[Not(b)] = MP(imp_neg(a, b), t)
                        changed = True
            elif isinstance(f, Implies):
                a, b = f.ante, f.cons
                if a in facts and b not in facts:
                    facts[b] = MP(t, facts[a])
                    changed = True
                elif Not(b) in facts and Not(a) not in facts:
                    facts[Not(a)] = _mp(mt(a, b), t, facts[Not(b)])
                    changed = True
            elif Not(f) in facts:
                return f, t, facts[Not(f)]
    for f, t in facts.items():
        if Not(f) in facts:
            return f, t, facts[Not(f)]
    return None


def _refute(facts: dict[Formula, _PT], target: Formula) -> _PT:
    """A proof of ``target`` from jointly unsatisfiable ``facts``."""
    facts = dict(facts)
    clash = _close(facts)
    if clash is not None:
        b, t_b, t_nb = clash
        if target is b:
            return t_b
        return contra(target, b, t_b, t_nb)
    for f in facts:
        if isinstance(f, Implies) and f.ante not in facts and f.cons not in facts \
                and Not(f.ante) not in facts:
            a = f.ante
            t_pos = _refute({**facts, a: Assume(a)}, target)
            t_neg = _refute({**facts, Not(a): Assume(Not(a))}, target)
            return _mp(cases(a, target), Lam(a, t_pos), Lam(Not(a), t_neg))
    raise _Open


def _prove(facts: dict[Formula, _PT], goal: Formula) -> _PT:
    if goal in facts:
        return facts[goal]
    if isinstance(goal, Implies):
        a = goal.ante
        return Lam(a, _prove({**facts, a: facts.get(a, Assume(a))}, goal.cons))
    if isinstance(goal, Not) and isinstance(goal.body, Not):
        return MP(dn_intro(goal.body.body), _prove(facts, goal.body.body))
    if isinstance(goal, Not) and isinstance(goal.body, Implies):
        a, b = goal.body.ante, goal.body.cons
        return _mp(neg_imp(a, b), _prove(facts, a), _prove(facts, Not(b)))
    closed = dict(facts)
    clash = _close(closed)
    if goal in closed:
        return closed[goal]
    if clash is not None:
        return contra(goal, *clash)
    ng = Not(goal)
    refutation = _refute({**facts, ng: Assume(ng)}, goal)
    return _mp(cases(goal, goal), Identity(goal), Lam(ng, refutation))


# ---------------------------------------------------------------- compiling

def _compile(t: _PT, memo: dict) -> _PT:
    """Remove every ``Lam`` from ``t``."""
    r = memo.get(t)
    if r is not None:
        return r
    if isinstance(t, MP):
        r = MP(_compile(t.imp, memo), _compile(t.arg, memo))
    elif isinstance(t, Lam):
        r = _abstract(t.a, _compile(t.body, memo), memo)
    else:
        r = t
    memo[t] = r
    return r


def _abstract(a: Formula, t: _PT, memo: dict) -> _PT:
    """A Lam-free proof of ``a => t.formula`` not depending on ``a``."""
    key = ("abs", a, t)
    r = memo.get(key)
    if r is not None:
        return r
    if a not in t.deps:
        r = MP(_ax(6, t.formula, a), t)
    elif isinstance(t, Assume):
        r = Identity(a)
    else:
        f, x = t.imp, t.arg
        if isinstance(x, Assume) and x.f is a and a not in f.deps:
            r = f
        else:
            r = _mp(_ax(7, a, x.formula, t.formula),
                    _abstract(a, f, memo), _abstract(a, x, memo))
    memo[key] = r
    return r


def _emit(t: _PT, b: ProofBuilder, memo: dict) -> int:
    k = memo.get(t)
    if k is not None:
        return k
    k = b.index_of(t.formula)
    if k is None:
        if isinstance(t, Premise):
            k = b.hyp(t.f)
        elif isinstance(t, Axiom):
            k = b.axiom(t.axiom, **dict(t.inst))
        elif isinstance(t, Identity):
            a = t.a
            aa = Implies(a, a)
            l1 = b.axiom(6, alpha=a, beta=aa)
            l2 = b.axiom(7, alpha=a, beta=aa, gamma=a)
            l3 = b.mp(l2, l1)
            l4 = b.axiom(6, alpha=a, beta=a)
            k = b.mp(l3, l4)
        elif isinstance(t, MP):
            k = b.mp(_emit(t.imp, b, memo), _emit(t.arg, b, memo))
        else:
            raise AssertionError(f"undischarged {type(t).__name__} in proof term")
    memo[t] = k
    return k


# ---------------------------------------------------------------- interface

def synthesize(theory: Iterable[Formula], goal: Formula,
               axioms: Iterable[tuple[int, tuple]] = (),
               premises: Iterable[Formula] | None = None) -> HilbertProof:
    """Hilbert proof of ``goal`` from ``theory`` plus extra axiom instances.

    ``axioms`` lists ``(axiom id, instantiation)`` pairs whose formulas may
    be used as premises; they are emitted as axiom lines. ``premises``
    restricts which theory formulas the search may use (default: all).
    Raises :class:`NotEntailed` when the premises do not propositionally
    entail the goal.
    """
    theory = list(theory)
    facts: dict[Formula, _PT] = {}
    for ax, inst in axioms:
        t = Axiom(ax, tuple(inst))
        facts.setdefault(t.formula, t)
    for f in theory if premises is None else premises:
        facts[f] = Premise(f)
    try:
        term = _prove(facts, goal)
    except _Open:
        raise NotEntailed(truth_table_valid(list(facts), goal)) from None
    term = _compile(term, {})
    builder = ProofBuilder(theory)
    _emit(term, builder, {})
    if builder.formula(len(builder.lines) - 1) is not goal:
        # the goal was derived earlier in the proof; restate it last
        builder.lines.append(builder.lines[builder.index_of(goal)])
    return builder.proof(goal)


def synthesize_proof(theory: Iterable[Formula], goal: Formula) -> HilbertProof:
    """An Ax6-Ax8 + MP proof of a propositional consequence.

    Raises :class:`NotEntailed` carrying a countervaluation otherwise.
    """
    theory = list(theory)
    verdict = truth_table_valid(theory, goal)
    if not verdict:
        raise NotEntailed(verdict)
    return synthesize(theory, goal)
