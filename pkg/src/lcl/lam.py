"""Lambda-calculus image of combinatory terms.

Extensional weak equality of CL terms coincides with beta-eta convertibility
of their lambda translations, so a beta-eta normal form is a complete
invariant of a term's extensional equality class.  This module translates
terms into de Bruijn lambda terms, normalizes them under a step budget, and
translates normal forms back with eta-optimizing bracket abstraction.

Lambda terms are plain tuples::

    ("v", i)        bound variable, de Bruijn index i
    ("f", name)     free variable
    ("l", body)     abstraction
    ("a", f, x)     application
"""
from __future__ import annotations

from .terms import App, Comb, Term, Var, I, K, S

__all__ = ["from_cl", "beta_eta_normal", "to_cl", "lam_free", "OutOfFuel"]

_V0, _V1, _V2 = ("v", 0), ("v", 1), ("v", 2)
_COMBINATORS = {
    "S": ("l", ("l", ("l", ("a", ("a", _V2, _V0), ("a", _V1, _V0))))),
    "K": ("l", ("l", _V1)),
    "I": ("l", _V0),
}


class OutOfFuel(Exception):
    pass


def from_cl(m: Term) -> tuple:
    memo: dict[Term, tuple] = {}

    def go(t: Term) -> tuple:
        r = memo.get(t)
        if r is None:
            if isinstance(t, Var):
                r = ("f", t.name)
            elif isinstance(t, Comb):
                r = _COMBINATORS[t.name]
            else:
                r = ("a", go(t.fun), go(t.arg))
            memo[t] = r
        return r

    return go(m)


def _shift(t: tuple, d: int, cutoff: int = 0) -> tuple:
    tag = t[0]
    if tag == "v":
        return ("v", t[1] + d) if t[1] >= cutoff else t
    if tag == "f":
        return t
    if tag == "l":
        return ("l", _shift(t[1], d, cutoff + 1))
    return ("a", _shift(t[1], d, cutoff), _shift(t[2], d, cutoff))


def _loose(t: tuple, depth: int = 0) -> bool:
    tag = t[0]
    if tag == "v":
        return t[1] >= depth
    if tag == "f":
        return False
    if tag == "l":
        return _loose(t[1], depth + 1)
    return _loose(t[1], depth) or _loose(t[2], depth)


def _instantiate(body: tuple, arg: tuple, arg_loose: bool, depth: int = 0) -> tuple:
    tag = body[0]
    if tag == "v":
        i = body[1]
        if i == depth:
            return _shift(arg, depth) if arg_loose and depth else arg
        return ("v", i - 1) if i > depth else body
    if tag == "f":
        return body
    if tag == "l":
        return ("l", _instantiate(body[1], arg, arg_loose, depth + 1))
    return ("a", _instantiate(body[1], arg, arg_loose, depth),
            _instantiate(body[2], arg, arg_loose, depth))


def _beta_nf(t: tuple, budget: list[int]) -> tuple:
    while True:
        if t[0] == "l":
            return ("l", _beta_nf(t[1], budget))
        args = []
        h = t
        while h[0] == "a":
            args.append(h[2])
            h = h[1]
        args.reverse()
        if h[0] == "l" and args:
            if budget[0] <= 0:
                raise OutOfFuel
            budget[0] -= 1
            t = _instantiate(h[1], args[0], _loose(args[0]))
            for a in args[1:]:
                t = ("a", t, a)
            continue
        out = h
        for a in args:
            out = ("a", out, _beta_nf(a, budget))
        return out


def _occurs(t: tuple, i: int) -> bool:
    tag = t[0]
    if tag == "v":
        return t[1] == i
    if tag == "f":
        return False
    if tag == "l":
        return _occurs(t[1], i + 1)
    return _occurs(t[1], i) or _occurs(t[2], i)


def _eta_nf(t: tuple) -> tuple:
    tag = t[0]
    if tag == "l":
        b = _eta_nf(t[1])
        if b[0] == "a" and b[2] == _V0 and not _occurs(b[1], 0):
            return _shift(b[1], -1)
        return ("l", b)
    if tag == "a":
        return ("a", _eta_nf(t[1]), _eta_nf(t[2]))
    return t


def beta_eta_normal(m: Term, fuel: int) -> tuple | None:
    """The beta-eta normal form of ``m``'s translation, or None.

    None means the step budget ran out (or the term got too deep to
    process), not that no normal form exists.
    """
    try:
        nf = _beta_nf(from_cl(m), [fuel])
        return _eta_nf(nf)
    except (OutOfFuel, RecursionError):
        return None


def lam_free(t: tuple) -> set[str]:
    out: set[str] = set()
    stack = [t]
    while stack:
        u = stack.pop()
        if u[0] == "f":
            out.add(u[1])
        elif u[0] == "l":
            stack.append(u[1])
        elif u[0] == "a":
            stack.append(u[1])
            stack.append(u[2])
    return out


def _abstract(x: str, m: Term) -> Term:
    if x not in m.fv:
        return App(K, m)
    if isinstance(m, Var):
        return I
    if isinstance(m.arg, Var) and m.arg.name == x and x not in m.fun.fv:
        return m.fun
    return App(App(S, _abstract(x, m.fun)), _abstract(x, m.arg))


def to_cl(t: tuple) -> Term:
    """Bracket-abstract a lambda term back into S/K/I form."""
    avoid = lam_free(t)
    counter = [0]

    def fresh() -> str:
        while True:
            name = f"w{counter[0]}"
            counter[0] += 1
            if name not in avoid:
                return name

    def go(u: tuple, ctx: list[str]) -> Term:
        tag = u[0]
        if tag == "v":
            return Var(ctx[-1 - u[1]])
        if tag == "f":
            return Var(u[1])
        if tag == "a":
            return App(go(u[1], ctx), go(u[2], ctx))
        x = fresh()
        body = go(u[1], ctx + [x])
        return _abstract(x, body)

    return go(t, [])
