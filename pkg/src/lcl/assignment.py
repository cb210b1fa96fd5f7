"""Type assignment for CL-> and CL->=.

Principal typing works by constraint generation and unification: every
combinator occurrence gets a fresh copy of its scheme, every application
node a fresh result variable. Type variables of the basis are rigid, so a
judgment ``gamma |- M : sigma`` holds exactly when ``sigma`` is an instance
of the principal type by a substitution fixing those variables.

CL->= adds the rule (eq). A subject's extensional equality class is
decided through the beta-eta normal form of its lambda translation, and
typability in CL->= coincides with typability of that normal form.
"""
from __future__ import annotations

import itertools
import sys
from dataclasses import dataclass
from typing import Iterable

from . import lam
from .reduction import normalize
from .simpletypes import (
    Arrow, Basis, SimpleType, TVar, UnificationError, apply_subst, arrows,
    canonical_names, canonicalize, match, unify_all,
)
from .terms import App, Comb, Term, Var, spine
from .verdict import DEFAULT_ARITY, DEFAULT_FUEL, FALSE, TRUE, TriBool, unknown

__all__ = [
    "Untypable", "scheme", "infer_type", "check_typing", "atom_in_cl",
    "typing_basis", "check_typing_eq", "typing_eq_witness", "restrict_basis",
    "TypedNode", "typing_derivation",
]

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))


class Untypable(ValueError):
    pass


def scheme(name: str) -> SimpleType:
    """The type scheme of a combinator over variables a, b, c."""
    a, b, c = TVar("a"), TVar("b"), TVar("c")
    if name == "S":
        return arrows(arrows(a, b, c), arrows(a, b), a, c)
    if name == "K":
        return arrows(a, b, a)
    return Arrow(a, a)


@dataclass(frozen=True)
class TypedNode:
    """One occurrence in a typing derivation."""
    term: Term
    type: SimpleType
    fun: "TypedNode | None" = None
    arg: "TypedNode | None" = None

    def nodes(self):
        yield self
        if self.fun is not None:
            yield from self.fun.nodes()
            yield from self.arg.nodes()


class _Gen:
    def __init__(self, env: dict[str, SimpleType]):
        self.env = env
        self.counter = itertools.count()
        self.eqs: list[tuple[SimpleType, SimpleType]] = []

    def fresh(self) -> TVar:
        return TVar(f"_t{next(self.counter)}")

    def node(self, m: Term) -> TypedNode:
        head, args = spine(m)
        if isinstance(head, Var):
            t = self.env.get(head.name)
            if t is None:
                raise Untypable(f"variable {head.name} is not declared in the basis")
        else:
            sch = scheme(head.name)
            t = apply_subst({v: self.fresh() for v in sorted(sch.tv)}, sch)
        node = TypedNode(head, t)
        for a in args:
            an = self.node(a)
            r = self.fresh()
            self.eqs.append((node.type, Arrow(an.type, r)))
            node = TypedNode(App(node.term, a), r, node, an)
        return node


def _solve(m: Term, env: dict[str, SimpleType], rigid: frozenset[str]):
    gen = _Gen(env)
    root = gen.node(m)
    try:
        s = unify_all(gen.eqs, rigid)
    except UnificationError as e:
        raise Untypable(f"{m} is not typable: {e}") from None
    return root, s


def _raw_principal(gamma: Basis, m: Term) -> SimpleType:
    root, s = _solve(m, dict(gamma), gamma.type_vars)
    return apply_subst(s, root.type)


def infer_type(gamma: Basis, m: Term) -> SimpleType:
    """The principal type of ``m`` under ``gamma``, canonically named.

    Raises :class:`Untypable`.
    """
    if not m.fv <= gamma.keys():
        missing = ", ".join(sorted(m.fv - gamma.keys()))
        raise Untypable(f"free variables not in the basis: {missing}")
    return canonicalize(_raw_principal(gamma, m), gamma.type_vars)


def check_typing(gamma: Basis, m: Term, sigma: SimpleType) -> bool:
    """Whether ``gamma |-CL m : sigma``."""
    if not m.fv <= gamma.keys():
        return False
    try:
        principal = _raw_principal(gamma, m)
    except Untypable:
        return False
    return match(principal, sigma, gamma.type_vars) is not None


def _open_principal(m: Term):
    env = {x: TVar(f"_x{i}") for i, x in enumerate(sorted(m.fv))}
    root, s = _solve(m, env, frozenset())
    return env, s, apply_subst(s, root.type)


def atom_in_cl(m: Term, sigma: SimpleType) -> bool:
    """Whether ``m : sigma`` is typable from some basis."""
    try:
        _, _, principal = _open_principal(m)
    except Untypable:
        return False
    return match(principal, sigma) is not None


def typing_basis(m: Term, sigma: SimpleType) -> Basis:
    """A basis on FV(m) from which ``m : sigma`` is derivable.

    Raises :class:`Untypable` when there is none.
    """
    env, s, principal = _open_principal(m)
    theta = match(principal, sigma)
    if theta is None:
        raise Untypable(f"{m} cannot have type {sigma}")
    types = {x: apply_subst(theta, apply_subst(s, t)) for x, t in env.items()}
    leftover = set().union(*(t.tv for t in types.values())) - sigma.tv
    names = canonical_names(sigma.tv | {n for n in leftover if not n.startswith("_")})
    fill = {v: TVar(next(names)) for v in sorted(leftover) if v.startswith("_")}
    return Basis({x: apply_subst(fill, t) for x, t in types.items()})


def typing_derivation(gamma: Basis, m: Term, sigma: SimpleType,
                      avoid: Iterable[str] = ()) -> TypedNode:
    """A derivation tree of ``gamma |-CL m : sigma``.

    Type variables the judgment leaves open are named freshly, avoiding
    ``avoid`` and the variables of ``gamma`` and ``sigma``. Raises
    :class:`Untypable` if the judgment does not hold.
    """
    if not m.fv <= gamma.keys():
        raise Untypable("free variables not in the basis")
    rigid = gamma.type_vars
    root, s = _solve(m, dict(gamma), rigid)
    theta = match(apply_subst(s, root.type), sigma, rigid)
    if theta is None:
        raise Untypable(f"{m} cannot have type {sigma} under {gamma}")
    full = {v: apply_subst(theta, t) for v, t in s.items()}
    for v, t in theta.items():
        full.setdefault(v, t)
    open_vars: set[str] = set()
    nodes = list(root.nodes())
    for n in nodes:
        open_vars |= {v for v in apply_subst(full, n.type).tv if v.startswith("_")}
    names = canonical_names(set(avoid) | rigid | sigma.tv)
    fill = {v: TVar(next(names)) for v in sorted(open_vars, key=lambda v: int(v[2:]))}

    def close(n: TypedNode) -> TypedNode:
        t = apply_subst(fill, apply_subst(full, n.type))
        if n.fun is None:
            return TypedNode(n.term, t)
        return TypedNode(n.term, t, close(n.fun), close(n.arg))

    return close(root)


def restrict_basis(gamma: Basis, xs: Iterable[str]) -> Basis:
    return gamma.restrict(xs)


# ------------------------------------------------------------------ CL->=

def typing_eq_witness(gamma: Basis, m: Term, sigma: SimpleType,
                      fuel: int = DEFAULT_FUEL,
                      arity_bound: int = DEFAULT_ARITY) -> tuple[TriBool, Term | None]:
    """Decide ``gamma |-CL= m : sigma`` within bounds, with a witness.

    On True the witness ``n`` satisfies ``n =w,eta m`` and
    ``gamma |-CL n : sigma``.
    """
    if check_typing(gamma, m, sigma):
        return TRUE, m
    nf = normalize(m, fuel)
    if nf.normal and check_typing(gamma, nf.term, sigma):
        return TRUE, nf.term
    bnf = lam.beta_eta_normal(m, fuel)
    if bnf is None:
        return unknown(f"no beta-eta normal form within {fuel} steps"), None
    w = lam.to_cl(bnf)
    if check_typing(gamma, w, sigma):
        return TRUE, w
    return FALSE, None


def check_typing_eq(gamma: Basis, m: Term, sigma: SimpleType,
                    fuel: int = DEFAULT_FUEL,
                    arity_bound: int = DEFAULT_ARITY) -> TriBool:
    """Bounded decision of ``gamma |-CL= m : sigma``.

    False is definitive: a typable class has a beta-eta normal form, and
    typing is preserved by reduction to it. Unknown means the normal form
    was not reached within ``fuel``.
    """
    return typing_eq_witness(gamma, m, sigma, fuel, arity_bound)[0]
