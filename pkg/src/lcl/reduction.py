"""Weak reduction, normalization and bounded equality checks."""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator, Literal

from . import lam
from .terms import ARITY, App, Comb, Term, Var, apply_all, fresh_vars, spine
from .verdict import DEFAULT_ARITY, DEFAULT_FUEL, FALSE, TRUE, TriBool, unknown

__all__ = [
    "RedexSite", "InvalidSite", "NormalForm", "FuelExhausted",
    "find_redexes", "reduce_step", "contract", "step", "reducts",
    "normalize", "normalize_random", "weak_equal", "ext_equal",
]

Step = Literal["L", "R"]


@dataclass(frozen=True)
class RedexSite:
    """A redex position: ``path`` walks from the root ('L' = function side,
    'R' = argument side); ``kind`` is the head combinator."""
    path: tuple[Step, ...]
    kind: Literal["S", "K", "I"]


class InvalidSite(ValueError):
    pass


@dataclass(frozen=True)
class NormalForm:
    term: Term
    steps: int
    normal = True


@dataclass(frozen=True)
class FuelExhausted:
    term: Term
    steps: int
    normal = False


def contract(redex: Term) -> Term:
    """Contract a term that is itself a redex (S M N L, K M N or I M)."""
    head, args = spine(redex)
    if not isinstance(head, Comb) or len(args) != ARITY[head.name]:
        raise InvalidSite(f"{redex} is not a redex")
    if head.name == "S":
        m, n, l = args
        return App(App(m, l), App(n, l))
    return args[0]


def find_redexes(m: Term) -> list[RedexSite]:
    """All redexes of ``m`` in leftmost-outermost (preorder) order."""
    out = []
    stack: list[tuple[Term, tuple]] = [(m, ())]
    while stack:
        t, path = stack.pop()
        if t.normal:
            continue
        if isinstance(t, App):
            head = t.head
            if isinstance(head, Comb) and t.nargs == ARITY[head.name]:
                out.append(RedexSite(path, head.name))
            stack.append((t.arg, path + ("R",)))
            stack.append((t.fun, path + ("L",)))
    return out


def reduce_step(m: Term, site: RedexSite) -> Term:
    """Contract the redex at ``site``; one step of weak reduction."""
    ancestors = []
    t = m
    for d in site.path:
        if not isinstance(t, App):
            raise InvalidSite(f"path {site.path} leaves the term")
        ancestors.append((t, d))
        t = t.fun if d == "L" else t.arg
    head, args = spine(t)
    if not (isinstance(head, Comb) and head.name == site.kind
            and len(args) == ARITY[site.kind]):
        raise InvalidSite(f"no {site.kind}-redex at {site.path}")
    new = contract(t)
    for parent, d in reversed(ancestors):
        new = App(new, parent.arg) if d == "L" else App(parent.fun, new)
    return new


def step(m: Term) -> Term | None:
    """One leftmost-outermost step, or None when ``m`` is normal."""
    if m.normal:
        return None
    frames = []
    t = m
    while True:
        head, args = spine(t)
        if isinstance(head, Comb) and len(args) >= ARITY[head.name]:
            n = ARITY[head.name]
            new = apply_all(contract(apply_all(head, args[:n])), args[n:])
            break
        for i, a in enumerate(args):
            if not a.normal:
                frames.append((head, args, i))
                t = a
                break
        else:  # pragma: no cover - normal flag guarantees a redex
            raise AssertionError("non-normal term without redex")
    for head, args, i in reversed(frames):
        new = apply_all(head, args[:i] + [new] + args[i + 1:])
    return new


def reducts(m: Term, fuel: int) -> Iterator[Term]:
    """The leftmost-outermost reduction sequence, ``m`` first."""
    yield m
    for _ in range(fuel):
        nxt = step(m)
        if nxt is None:
            return
        m = nxt
        yield m


def normalize(m: Term, fuel: int = DEFAULT_FUEL) -> NormalForm | FuelExhausted:
    """Leftmost-outermost weak normalization within ``fuel`` steps."""
    if fuel < 0:
        raise ValueError("fuel must be nonnegative")
    steps = 0
    while not m.normal:
        if steps >= fuel:
            return FuelExhausted(m, steps)
        m = step(m)
        steps += 1
    return NormalForm(m, steps)


def normalize_random(m: Term, fuel: int, rng: random.Random) -> NormalForm | FuelExhausted:
    """Normalize contracting a uniformly chosen redex at each step."""
    steps = 0
    while not m.normal:
        if steps >= fuel:
            return FuelExhausted(m, steps)
        m = reduce_step(m, rng.choice(find_redexes(m)))
        steps += 1
    return NormalForm(m, steps)


def _common_reduct(m: Term, n: Term, fuel: int) -> bool:
    seen_m: set[Term] = set()
    seen_n: set[Term] = set()
    for a, b in zip(_padded(reducts(m, fuel)), _padded(reducts(n, fuel))):
        if a is None and b is None:
            return False
        if a is not None:
            if a in seen_n:
                return True
            seen_m.add(a)
        if b is not None:
            if b in seen_m:
                return True
            seen_n.add(b)
    return False


def _padded(it: Iterator[Term]) -> Iterator[Term | None]:
    yield from it
    while True:
        yield None


def weak_equal(m: Term, n: Term, fuel: int = DEFAULT_FUEL) -> TriBool:
    """Bounded decision of ``m =w n``.

    True when the terms share a reduct (in particular equal normal forms),
    False when both have normal forms and they differ, Unknown otherwise.
    """
    if m is n:
        return TRUE
    rm = normalize(m, fuel)
    rn = normalize(n, fuel)
    if rm.normal and rn.normal:
        return TriBool.of(rm.term is rn.term)
    if _common_reduct(m, n, fuel):
        return TRUE
    side = "left" if not rm.normal else "right"
    return unknown(f"{side} side has no normal form within {fuel} steps")


def ext_equal(m: Term, n: Term, fuel: int = DEFAULT_FUEL,
              arity_bound: int = DEFAULT_ARITY) -> TriBool:
    """Bounded decision of extensional weak equality ``m =w,eta n``.

    First applies both sides to k = 0..arity_bound shared fresh variables
    and looks for weak equality; that proves equality by the extensionality
    rule. Disequality is only reported when both terms have beta-eta normal
    forms (within ``fuel`` beta steps) and those differ.
    """
    if arity_bound < 0:
        raise ValueError("arity_bound must be nonnegative")
    if m is n:
        return TRUE
    xs = [Var(x) for x in fresh_vars(m.fv | n.fv, arity_bound)]
    for k in range(arity_bound + 1):
        if weak_equal(apply_all(m, xs[:k]), apply_all(n, xs[:k]), fuel).is_true:
            return TRUE
    lm = lam.beta_eta_normal(m, fuel)
    ln = lam.beta_eta_normal(n, fuel)
    if lm is not None and ln is not None:
        return TriBool.of(lm == ln)
    return unknown(f"no beta-eta normal form within {fuel} steps "
                   f"and no agreement on up to {arity_bound} fresh arguments")
