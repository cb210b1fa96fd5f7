"""Hash-consed immutable nodes.

Every syntax node (terms, types, formulas) is interned: constructing a node
with the same class and the same children returns the existing object.
Structural equality is therefore identity, hashing is O(1), and shared
subtrees are stored once.
"""
from __future__ import annotations

import threading
import weakref

_table: "weakref.WeakValueDictionary[tuple, Interned]" = weakref.WeakValueDictionary()
_lock = threading.Lock()


class Interned:
    __slots__ = ("__weakref__",)

    def __new__(cls, *args):
        key = (cls, *args)
        obj = _table.get(key)
        if obj is not None:
            return obj
        # _setup may intern children, so it runs outside the lock
        fresh = object.__new__(cls)
        fresh._setup(*args)
        with _lock:
            obj = _table.get(key)
            if obj is None:
                _table[key] = obj = fresh
        return obj

    def __init__(self, *args):
        pass

    def _setup(self, *args):
        raise NotImplementedError

    def _args(self) -> tuple:
        raise NotImplementedError

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def __reduce__(self):
        return (type(self), self._args())

    def __copy__(self):
        return self

    def __deepcopy__(self, memo):
        return self


def _set(obj, **fields):
    for k, v in fields.items():
        object.__setattr__(obj, k, v)
