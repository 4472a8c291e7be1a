"""Encodings of classes and relations as subsets of G(A).

A class X is ``{{x} -> x : x in X}``.  An n-ary relation R uses the curried
shape ``{x1} -> ({x2} -> ... ({xn} -> xn))`` for factual predication, so that
``[R] X1 .. Xn`` is the set of last components reachable from the arguments.
The relational (valued) form replaces the final consequent by the whole tuple
``<x1, .., xn>``.
"""

from __future__ import annotations

import itertools
from typing import Iterable

from .errors import ShapeError
from .kernel import Arrow, Atom, Intensional, Tup, sort_key


def class_set(items: Iterable) -> frozenset:
    return frozenset(Arrow([x], x) for x in items)


def _nest(t, cons):
    x = cons
    for a in reversed(t):
        x = Arrow([a], x)
    return x


def relation_set(tuples: Iterable[tuple]) -> frozenset:
    """Factual encoding of a relation given as tuples of elements."""
    return frozenset(_nest(t, t[-1]) for t in tuples)


def relational_set(tuples: Iterable[tuple]) -> frozenset:
    """Relational encoding: the final consequent is the tuple itself."""
    out = set()
    for t in tuples:
        out.add(_nest(t, Tup(t) if len(t) > 1 else t[0]))
    return frozenset(out)


def unnest(x, n: int):
    """Split ``a1 -> (.. (an -> a))`` into ``([a1, .., an], a)``."""
    ants = []
    for _ in range(n):
        if not isinstance(x, Arrow):
            raise ShapeError(f"{x} has fewer than {n} nested arrows")
        ants.append(x.ante)
        x = x.cons
    return ants, x


def ext_set(m, n: int) -> frozenset:
    """Consequents at depth n: ``{a : (a1 -> .. (an -> a)) in m}``."""
    if isinstance(m, Intensional):
        raise ShapeError("ext needs an extensional set")
    return frozenset(unnest(x, n)[1] for x in m)


def decode_relation(m, n: int) -> frozenset:
    """Tuples of a factual relation encoding (singleton antecedents)."""
    if isinstance(m, Intensional):
        raise ShapeError("cannot decode an intensional set")
    out = set()
    for x in m:
        ants, last = unnest(x, n)
        if any(len(a) != 1 for a in ants):
            raise ShapeError(f"{x} is not a singleton-antecedent relation member")
        out.add(tuple(next(iter(a)) for a in ants[:-1]) + (last,))
    return frozenset(out)


def slot_extents(m, n: int):
    """Per-slot value sets of a factual relation encoding."""
    rel = decode_relation(m, n)
    return [frozenset(t[j] for t in rel) for j in range(n)]


def product_domain(m, n: int) -> frozenset:
    """All tuples whose j-th component is a possible value of slot j."""
    slots = [sorted(s, key=sort_key) for s in slot_extents(m, n)]
    return frozenset(itertools.product(*slots))


def atoms(names: Iterable[str]) -> frozenset:
    return frozenset(Atom(n) for n in names)
