"""Derivations in the equational theories EQ and EQ-eta.

A derivation is a tree of :class:`EqDerivation` nodes, each carrying its
conclusion ``lhs = rhs``. :func:`check_eq_derivation` re-verifies every
node against its rule and returns the root equation, or raises
:class:`InvalidDerivation` naming the first bad node (children first).
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .terms import App, I, K, S, Term, Var, spine

__all__ = ["RULES", "EqDerivation", "InvalidDerivation", "check_eq_derivation",
           "is_valid_derivation"]

RULES = ("id", "S", "K", "I", "sym", "trans", "app-l", "app-r", "ext")
_PREMISES = {"id": 0, "S": 0, "K": 0, "I": 0, "sym": 1, "trans": 2,
             "app-l": 1, "app-r": 1, "ext": 1}


@dataclass(frozen=True)
class EqDerivation:
    rule: str
    lhs: Term
    rhs: Term
    premises: tuple["EqDerivation", ...] = ()
    var: str | None = field(default=None)

    def __post_init__(self):
        if self.rule not in _PREMISES:
            raise ValueError(f"unknown rule {self.rule!r}")
        object.__setattr__(self, "premises", tuple(self.premises))

    @property
    def size(self) -> int:
        return 1 + sum(p.size for p in self.premises)

    def __str__(self) -> str:
        return f"{self.lhs} = {self.rhs}  ({self.rule})"


class InvalidDerivation(ValueError):
    def __init__(self, node: EqDerivation, reason: str):
        self.node = node
        self.reason = reason
        super().__init__(f"{node}: {reason}")


def _axiom_ok(rule: str, lhs: Term, rhs: Term) -> bool:
    head, args = spine(lhs)
    if rule == "S":
        return (head is S and len(args) == 3
                and rhs is App(App(args[0], args[2]), App(args[1], args[2])))
    if rule == "K":
        return head is K and len(args) == 2 and rhs is args[0]
    return head is I and len(args) == 1 and rhs is args[0]


def check_eq_derivation(d: EqDerivation, allow_ext: bool = False) -> tuple[Term, Term]:
    """Check every node of ``d``; return its conclusion ``(lhs, rhs)``."""
    for p in d.premises:
        check_eq_derivation(p, allow_ext)
    rule, lhs, rhs = d.rule, d.lhs, d.rhs
    if len(d.premises) != _PREMISES[rule]:
        raise InvalidDerivation(d, f"({rule}) takes {_PREMISES[rule]} premise(s)")
    prem = [(p.lhs, p.rhs) for p in d.premises]
    if rule == "id":
        if lhs is not rhs:
            raise InvalidDerivation(d, "(id) needs identical sides")
    elif rule in ("S", "K", "I"):
        if not _axiom_ok(rule, lhs, rhs):
            raise InvalidDerivation(d, f"not an instance of axiom ({rule})")
    elif rule == "sym":
        if prem[0] != (rhs, lhs):
            raise InvalidDerivation(d, "(sym) conclusion is not the reversed premise")
    elif rule == "trans":
        (a, b), (c, e) = prem
        if b is not c:
            raise InvalidDerivation(d, "(trans) middle terms differ")
        if (a, e) != (lhs, rhs):
            raise InvalidDerivation(d, "(trans) conclusion does not chain the premises")
    elif rule in ("app-l", "app-r"):
        if not (isinstance(lhs, App) and isinstance(rhs, App)):
            raise InvalidDerivation(d, f"({rule}) conclusion sides must be applications")
        m, n = prem[0]
        if rule == "app-l":
            ok = lhs.fun is m and rhs.fun is n and lhs.arg is rhs.arg
        else:
            ok = lhs.arg is m and rhs.arg is n and lhs.fun is rhs.fun
        if not ok:
            raise InvalidDerivation(d, f"({rule}) conclusion does not match premise")
    else:  # ext
        if not allow_ext:
            raise InvalidDerivation(d, "(ext) is not allowed in EQ")
        if d.var is None:
            raise InvalidDerivation(d, "(ext) node carries no variable")
        x = Var(d.var)
        if d.var in lhs.fv or d.var in rhs.fv:
            raise InvalidDerivation(d, f"(ext) variable {d.var} occurs in the conclusion")
        if prem[0] != (App(lhs, x), App(rhs, x)):
            raise InvalidDerivation(d, "(ext) premise must be M x = N x")
    return lhs, rhs


def is_valid_derivation(d: EqDerivation, allow_ext: bool = False) -> bool:
    try:
        check_eq_derivation(d, allow_ext)
    except InvalidDerivation:
        return False
    return True
