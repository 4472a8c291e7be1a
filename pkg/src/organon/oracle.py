"""Brute-force reference semantics used to check the combinatory engine.

Nothing here goes through comprehension, fixpoint iteration or the
three-valued machinery: structures are plain sets of name tuples and
sentences are evaluated the Tarski way, by enumerating every assignment.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Mapping, Tuple

import numpy as np

from . import kernel
from .errors import CapExceeded, OrganonError, UnboundName
from .expr import Alpha, And, App, Const, Eps, Not, Or, SetLit, Var, spine
from .kernel import Atom


@dataclass
class Structure:
    carrier: FrozenSet[str]
    relations: Dict[str, Tuple[int, FrozenSet[tuple]]] = field(default_factory=dict)
    constants: Dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        self.carrier = frozenset(self.carrier)
        for name, (arity, tuples) in self.relations.items():
            for t in tuples:
                if len(t) != arity:
                    raise OrganonError(f"{name}: tuple {t} does not have arity {arity}")
                missing = set(t) - self.carrier
                if missing:
                    raise OrganonError(f"{name}: {sorted(missing)} not in carrier")
        for name, atom in self.constants.items():
            if atom not in self.carrier:
                raise OrganonError(f"constant {name} names unknown atom {atom}")

    def rel(self, name) -> FrozenSet[tuple]:
        if name not in self.relations:
            raise UnboundName(name)
        return self.relations[name][1]

    def without(self, name, t) -> "Structure":
        rels = dict(self.relations)
        arity, tuples = rels[name]
        rels[name] = (arity, tuples - {tuple(t)})
        return Structure(self.carrier, rels, dict(self.constants))

    @classmethod
    def from_json(cls, doc) -> "Structure":
        if isinstance(doc, str):
            doc = json.loads(doc)
        rels = {name: (spec["arity"], frozenset(tuple(t) for t in spec["tuples"]))
                for name, spec in doc.get("relations", {}).items()}
        return cls(frozenset(doc.get("atoms", [])), rels, dict(doc.get("constants", {})))

    def to_json(self) -> dict:
        return {
            "atoms": sorted(self.carrier),
            "relations": {n: {"arity": a, "tuples": sorted(list(t) for t in ts)}
                          for n, (a, ts) in sorted(self.relations.items())},
            "constants": dict(sorted(self.constants.items())),
        }


# -- first-order sentences ------------------------------------------------------

@dataclass(frozen=True)
class FAtom:
    rel: str
    terms: Tuple[str, ...]


@dataclass(frozen=True)
class FNot:
    body: object


@dataclass(frozen=True)
class FAnd:
    left: object
    right: object


@dataclass(frozen=True)
class FOr:
    left: object
    right: object


@dataclass(frozen=True)
class FForall:
    var: str
    body: object
    sort: str = None


@dataclass(frozen=True)
class FExists:
    var: str
    body: object
    sort: str = None


def from_expr(e):
    """First-order reading of a script expression; raises if it has none."""
    if isinstance(e, Not):
        return FNot(from_expr(e.body))
    if isinstance(e, And):
        return FAnd(from_expr(e.left), from_expr(e.right))
    if isinstance(e, Or):
        return FOr(from_expr(e.left), from_expr(e.right))
    if isinstance(e, Eps):
        return FExists(e.var, from_expr(e.body), e.sort)
    if isinstance(e, Alpha):
        return FForall(e.var, from_expr(e.body), e.sort)
    head, args = spine(e)
    if isinstance(head, Const) and args and all(isinstance(a, (Var, Const)) for a in args):
        return FAtom(head.name, tuple(a.name for a in args))
    raise OrganonError("expression has no first-order reading")


def _range(s: Structure, sort):
    if sort is None:
        return sorted(s.carrier)
    return sorted(t[0] for t in s.rel(sort))


def fo_eval(f, s: Structure, env: Mapping[str, str] = None, cap: int = 12) -> bool:
    """Classical truth of ``f`` in ``s`` by exhaustive enumeration."""
    if len(s.carrier) > cap:
        raise CapExceeded(f"carrier of size {len(s.carrier)} exceeds cap {cap}")
    env = dict(env or {})

    def term(t):
        if t in env:
            return env[t]
        if t in s.constants:
            return s.constants[t]
        if t in s.carrier:
            return t
        raise UnboundName(t)

    def ev(f):
        if isinstance(f, FAtom):
            return tuple(term(t) for t in f.terms) in s.rel(f.rel)
        if isinstance(f, FNot):
            return not ev(f.body)
        if isinstance(f, FAnd):
            return ev(f.left) and ev(f.right)
        if isinstance(f, FOr):
            return ev(f.left) or ev(f.right)
        if isinstance(f, (FForall, FExists)):
            saved = env.get(f.var)
            results = []
            for a in _range(s, f.sort):
                env[f.var] = a
                results.append(ev(f.body))
            if saved is None:
                env.pop(f.var, None)
            else:
                env[f.var] = saved
            return all(results) if isinstance(f, FForall) else any(results)
        raise TypeError(f"not a formula: {f!r}")

    return ev(f)


def leaves_domain(f, s: Structure, domains: Mapping[str, FrozenSet[tuple]],
                  env: Mapping[str, str] = None) -> bool:
    """Whether some atomic instance met while enumerating every quantifier
    range (without short-circuiting) has its tuple outside the given domain."""
    env = dict(env or {})

    def term(t):
        return env.get(t, s.constants.get(t, t))

    def walk(f) -> bool:
        if isinstance(f, FAtom):
            return tuple(term(t) for t in f.terms) not in domains[f.rel]
        if isinstance(f, FNot):
            return walk(f.body)
        if isinstance(f, (FAnd, FOr)):
            return walk(f.left) | walk(f.right)
        found = False
        saved = env.get(f.var)
        for a in _range(s, f.sort):
            env[f.var] = a
            found = walk(f.body) or found
        if saved is None:
            env.pop(f.var, None)
        else:
            env[f.var] = saved
        return found

    return walk(f)


# -- genealogy ---------------------------------------------------------------

def genealogy_oracle(query: str, s: Structure) -> FrozenSet[tuple]:
    """Reference extensions of the family predicates (relational algebra)."""
    mother, father = s.rel("mother"), s.rel("father")
    males = {t[0] for t in s.rel("male")}
    if query == "child":
        return frozenset((c, m) for m, c in mother)
    if query == "sibling":
        return frozenset((y, z) for x, y in mother for x2, z in mother if x == x2)
    if query == "mdesc":
        found = {(x, y) for x, y in father if y in males}
        while True:
            step = {(x, y) for z, y in father for x, z2 in found if z2 == z}
            if step <= found:
                return frozenset(found)
            found |= step
    raise OrganonError(f"no oracle for {query!r}")


def mdesc_matrix(s: Structure) -> FrozenSet[tuple]:
    """Male descendants as son-edge followed by any number of father edges."""
    names = sorted(s.carrier)
    idx = {n: i for i, n in enumerate(names)}
    n = len(names)
    fat = np.zeros((n, n), dtype=np.int64)
    for x, y in s.rel("father"):
        fat[idx[x], idx[y]] = 1
    male = np.zeros(n, dtype=np.int64)
    for (m,) in s.rel("male"):
        male[idx[m]] = 1
    son = fat * male[None, :]
    total = np.zeros((n, n), dtype=np.int64)
    power = np.eye(n, dtype=np.int64)
    for _ in range(n):
        total = total + son @ power
        power = np.minimum(power @ fat, 1)
    return frozenset((names[i], names[j]) for i, j in zip(*np.nonzero(total)))


# -- applicative evaluation ----------------------------------------------------

def direct_eval(e, env: Mapping[str, kernel.ModelSet], args: Mapping[str, kernel.ModelSet],
                b: kernel.Bounds = kernel.DEFAULT_BOUNDS):
    """Structural recursion using only kernel.apply and set operations."""
    if isinstance(e, Var):
        return args[e.name]
    if isinstance(e, Const):
        return env[e.name]
    if isinstance(e, SetLit):
        return frozenset(Atom(n) for n in e.names)
    if isinstance(e, App):
        return kernel.apply(direct_eval(e.fn, env, args, b), direct_eval(e.arg, env, args, b), b)
    if isinstance(e, And):
        left, right = direct_eval(e.left, env, args, b), direct_eval(e.right, env, args, b)
        return frozenset(x for x in left if kernel.member(right, x))
    if isinstance(e, Or):
        return direct_eval(e.left, env, args, b) | direct_eval(e.right, env, args, b)
    raise OrganonError(f"direct_eval handles applicative expressions only, got {type(e).__name__}")


# -- categorical statements over classes ---------------------------------------

def class_verdict(form: str, x: frozenset, y: frozenset) -> bool:
    """Class reading of the four categorical forms."""
    if form == "all":
        return x <= y
    if form == "no":
        return not (x & y)
    if form == "some":
        return bool(x & y)
    if form == "some-not":
        return not x <= y
    raise OrganonError(f"unknown categorical form {form!r}")
