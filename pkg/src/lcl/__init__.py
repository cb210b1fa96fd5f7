"""Combinatory logic, simple types and the logic of typed combinators.

Submodules:

- ``terms``, ``reduction``, ``eqtheory``, ``lam``: the CL kernel
- ``simpletypes``, ``assignment``: types, unification and type assignment
- ``formulas``, ``hilbert``, ``propositional``, ``synthesis``, ``search``: the logic
- ``semantics``: applicative structures and term models
- ``cli``: the ``lcl`` command
"""
from .verdict import *  # noqa: F401,F403
from .terms import *  # noqa: F401,F403
from .reduction import *  # noqa: F401,F403
from .eqtheory import *  # noqa: F401,F403
from .simpletypes import *  # noqa: F401,F403
from .assignment import *  # noqa: F401,F403
from .formulas import *  # noqa: F401,F403
from .hilbert import *  # noqa: F401,F403
from .propositional import *  # noqa: F401,F403
from .synthesis import *  # noqa: F401,F403
from .search import *  # noqa: F401,F403
from .semantics import *  # noqa: F401,F403

__version__ = "0.1.0"
