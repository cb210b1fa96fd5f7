"""Three-valued verdicts and resource bounds.

Weak and extensional equality of combinatory terms are undecidable, so
every bounded check answers with a :class:`TriBool`: ``TRUE`` and ``FALSE``
are definitive, ``Unknown`` means a budget ran out and carries the reason.
"""
from __future__ import annotations

import os
from dataclasses import dataclass

__all__ = ["TriBool", "TRUE", "FALSE", "unknown", "Bounds",
           "DEFAULT_FUEL", "DEFAULT_ARITY", "DEFAULT_DEPTH"]

DEFAULT_FUEL = 10_000
DEFAULT_ARITY = 3
DEFAULT_DEPTH = 2


@dataclass(frozen=True)
class TriBool:
    value: bool | None
    reason: str = ""

    @property
    def is_true(self) -> bool:
        return self.value is True

    @property
    def is_false(self) -> bool:
        return self.value is False

    @property
    def is_unknown(self) -> bool:
        return self.value is None

    def __bool__(self):
        raise TypeError("TriBool has no truth value; use .is_true / .is_false")

    def __invert__(self) -> "TriBool":
        if self.value is None:
            return self
        return FALSE if self.value else TRUE

    def __and__(self, other: "TriBool") -> "TriBool":
        if self.is_false or other.is_false:
            return FALSE
        if self.is_true and other.is_true:
            return TRUE
        return self if self.is_unknown else other

    def __or__(self, other: "TriBool") -> "TriBool":
        if self.is_true or other.is_true:
            return TRUE
        if self.is_false and other.is_false:
            return FALSE
        return self if self.is_unknown else other

    def implies(self, other: "TriBool") -> "TriBool":
        return ~self | other

    @classmethod
    def of(cls, flag: bool) -> "TriBool":
        return TRUE if flag else FALSE

    def __str__(self) -> str:
        if self.value is None:
            return f"Unknown ({self.reason})" if self.reason else "Unknown"
        return str(self.value)

    def to_json(self):
        if self.value is None:
            return {"value": "Unknown", "reason": self.reason}
        return {"value": self.value}


TRUE = TriBool(True)
FALSE = TriBool(False)


def unknown(reason: str) -> TriBool:
    return TriBool(None, reason)


@dataclass(frozen=True)
class Bounds:
    """Budgets for the bounded decision procedures.

    fuel: reduction steps per normalization; arity: how many fresh
    arguments extensional checks may apply; depth: saturation rounds.
    """
    fuel: int = DEFAULT_FUEL
    arity: int = DEFAULT_ARITY
    depth: int = DEFAULT_DEPTH

    def __post_init__(self):
        for name in ("fuel", "arity", "depth"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")

    @classmethod
    def from_env(cls, environ=None) -> "Bounds":
        env = os.environ if environ is None else environ
        return cls(int(env.get("LCL_FUEL", DEFAULT_FUEL)),
                   int(env.get("LCL_ARITY", DEFAULT_ARITY)),
                   int(env.get("LCL_DEPTH", DEFAULT_DEPTH)))

    def __str__(self) -> str:
        return f"fuel={self.fuel}, arity={self.arity}, depth={self.depth}"
