"""Combinatory graph-model semantics for predication, relations and quantifiers.

Layers, bottom up: ``kernel`` (graph elements, application, S and K),
``comprehension`` (expressions to model sets), ``factual`` (fact sets,
epsilon/alpha, three-valued truth), ``relational`` (valued tuples and
quantifiers), ``lang`` (the ``.org`` script language) and ``cli``.
``oracle`` holds the brute-force reference semantics used for checking.
"""

from .errors import (BoundExceeded, NonMonotone, OrganonError, ParseError, SeedInvalid,
                     ShapeError)
from .kernel import (DEFAULT_BOUNDS, Arrow, Atom, Bounds, Tup, apply, combinator_K,
                     combinator_S, level)

__all__ = [
    "Arrow", "Atom", "Bounds", "BoundExceeded", "DEFAULT_BOUNDS", "NonMonotone",
    "OrganonError", "ParseError", "SeedInvalid", "ShapeError", "Tup", "apply",
    "combinator_K", "combinator_S", "level",
]
