"""Relational (valued) semantics: predications produce polarity-tagged tuples.

A constant C of arity n is read through its relational encoding
``{a1} -> (.. ({an} -> <a1, .., an>))`` over its fact domain, the product of
the slot extents of its factual encoding.  A valuation tags each tuple of the
fact domain verifying or falsifying; the closed-world valuation makes exactly
the listed tuples verifying.  Evaluation yields a propositional formula over
valued tuples in negation-normal form, together with the indeterminate mark
for predications that produce no fact at all.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, Mapping, Optional, Tuple

from . import kernel
from .encode import product_domain, unnest
from .errors import MissingValuation, OrganonError, ShapeError
from .expr import Alpha, And, Const, Eps, Not, Or, Var, free_vars, spine
from .factual import Env, Truth, term_value
from .kernel import Atom, Intensional, Tup, sort_key


@dataclass(frozen=True)
class ValuedTuple:
    items: Tuple[kernel.Element, ...]
    polarity: bool

    def __str__(self):
        return "<" + ", ".join(map(str, self.items)) + ">" + ("⊤" if self.polarity else "⊥")


@dataclass(frozen=True)
class Lit:
    fact: ValuedTuple

    def __str__(self):
        return str(self.fact)


@dataclass(frozen=True)
class Indet:
    def __str__(self):
        return "△"


@dataclass(frozen=True)
class Conj:
    parts: tuple = ()

    def __str__(self):
        return "(" + " ∧ ".join(map(str, self.parts)) + ")" if self.parts else "⊤"


@dataclass(frozen=True)
class Disj:
    parts: tuple = ()

    def __str__(self):
        return "(" + " ∨ ".join(map(str, self.parts)) + ")" if self.parts else "⊥"


INDET = Indet()


def negate(f):
    """Dual of ``f``: polarities flipped, conjunctions and disjunctions swapped."""
    if isinstance(f, Lit):
        return Lit(ValuedTuple(f.fact.items, not f.fact.polarity))
    if isinstance(f, Indet):
        return f
    if isinstance(f, Conj):
        return Disj(tuple(negate(p) for p in f.parts))
    if isinstance(f, Disj):
        return Conj(tuple(negate(p) for p in f.parts))
    raise TypeError(f"not a formula: {f!r}")


def has_indet(f) -> bool:
    if isinstance(f, Indet):
        return True
    if isinstance(f, (Conj, Disj)):
        return any(has_indet(p) for p in f.parts)
    return False


def _truth3(f):
    # None stands for the indeterminate mark; it absorbs everything
    if isinstance(f, Lit):
        return f.fact.polarity
    if isinstance(f, Indet):
        return None
    if isinstance(f, (Conj, Disj)):
        vals = [_truth3(p) for p in f.parts]
        if None in vals:
            return None
        return all(vals) if isinstance(f, Conj) else any(vals)
    raise TypeError(f"not a formula: {f!r}")


def formula_truth(f) -> Truth:
    """△ anywhere gives △; otherwise the classical value (empty Conj true, empty Disj false)."""
    t = _truth3(f)
    if t is None:
        return Truth.INDET
    return Truth.TRUE if t else Truth.FALSE


def literals(f):
    if isinstance(f, Lit):
        yield f
    elif isinstance(f, (Conj, Disj)):
        for p in f.parts:
            yield from literals(p)


# -- relational predications --------------------------------------------------

@dataclass(frozen=True)
class RelationalPredication:
    """Tuples ``<a1, .., an>`` with each ``a_i`` in the argument ``x_i`` and
    ``x_i`` inside the member's antecedent ``alpha_i``."""

    members: Tuple[Tuple[tuple, object], ...]
    arity: int

    def __call__(self, *args) -> frozenset:
        if len(args) != self.arity:
            raise OrganonError(f"expected {self.arity} arguments, got {len(args)}")
        out = set()
        for ants, cons in self.members:
            if not all(x <= a for x, a in zip(args, ants)):
                continue
            if isinstance(cons, Tup) and len(cons.items) == self.arity:
                if all(c in x for c, x in zip(cons.items, args)):
                    out.add(cons.items)
            elif cons in args[-1]:
                for head in itertools.product(*(sorted(x, key=sort_key) for x in args[:-1])):
                    out.add(head + (cons,))
        return frozenset(out)


def to_relational(p, arity: int) -> RelationalPredication:
    if isinstance(p, Intensional):
        raise ShapeError("relational reading needs an extensional set")
    members = []
    for x in p:
        ants, cons = unnest(x, arity)
        if any(not a for a in ants):
            raise ShapeError(f"{x} has an empty antecedent")
        if isinstance(cons, kernel.Arrow):
            raise ShapeError(f"{x} has more than {arity} nested arrows")
        members.append((tuple(ants), cons))
    return RelationalPredication(tuple(members), arity)


def fact_domain(env: Env, name: str) -> frozenset:
    if name not in env.arities:
        raise MissingValuation(name)
    return product_domain(env.values[name], env.arities[name])


@dataclass
class Valuation:
    """Polarity of every tuple in each constant's fact domain."""

    polarity: Dict[str, Dict[tuple, bool]] = field(default_factory=dict)

    def of(self, name) -> Dict[tuple, bool]:
        if name not in self.polarity:
            raise MissingValuation(name)
        return self.polarity[name]


def closed_world(env: Env, names=None, overrides: Optional[Mapping[str, Mapping[tuple, bool]]] = None
                 ) -> Valuation:
    """Listed tuples verifying, the rest of the fact domain falsifying."""
    names = sorted(env.arities) if names is None else names
    pol = {}
    for n in names:
        listed = env.relations[n]
        pol[n] = {t: t in listed for t in fact_domain(env, n)}
    for n, extra in (overrides or {}).items():
        dom = pol.get(n, {})
        for t, v in extra.items():
            t = tuple(a if isinstance(a, Atom) else Atom(a) for a in t)
            if t not in dom:
                raise OrganonError(f"{n}: {t} is outside the fact domain")
            dom[t] = v
    return Valuation(pol)


# -- evaluation ----------------------------------------------------------------

@dataclass
class LambdaEnv:
    env: Env
    valuation: Valuation


def _atomic(e, ctx: LambdaEnv, sigma):
    head, args = spine(e)
    if not isinstance(head, Const) or head.name not in ctx.env.arities:
        raise MissingValuation(f"no valuation for {head}")
    name = head.name
    pol = ctx.valuation.of(name)
    if len(args) != ctx.env.arities[name]:
        raise OrganonError(f"{name} takes {ctx.env.arities[name]} arguments")
    values = [term_value(a, ctx.env, sigma) for a in args]
    if any(isinstance(v, Intensional) for v in values):
        raise OrganonError(f"argument of {name} is not a finite set")
    size = 1
    for v in values:
        size *= len(v)
    if size <= len(pol):
        candidates = (t for t in itertools.product(*values) if t in pol)
    else:
        candidates = (t for t in pol if all(a in v for a, v in zip(t, values)))
    produced = sorted(candidates, key=lambda t: [sort_key(a) for a in t])
    if not produced:
        return INDET
    return Conj(tuple(Lit(ValuedTuple(t, pol[t])) for t in produced))


def quantifier_range(e, ctx: LambdaEnv):
    return sorted(ctx.env.sort_range(e.sort), key=sort_key)


def _key(e, sigma):
    """Values of the free variables of ``e`` (sorted by name), for literal tuples."""
    return tuple(next(iter(sigma[v])) for v in sorted(free_vars(e))
                 if v in sigma and len(sigma[v]) == 1)


def _instances(e, ctx: LambdaEnv, sigma):
    for a in quantifier_range(e, ctx):
        yield a, formula_truth(eval_lambda(e.body, ctx, {**sigma, e.var: frozenset([a])}))


def exists(e: Eps, ctx: LambdaEnv, sigma) -> object:
    """Disjunction of verifying facts for the witnesses; △ if an instance is."""
    key = _key(e, sigma)
    parts, indet = [], False
    for a, t in _instances(e, ctx, sigma):
        if t is Truth.TRUE:
            parts.append(Lit(ValuedTuple(key + (a,), True)))
        indet = indet or t is Truth.INDET
    if indet:
        parts.append(INDET)
    return Disj(tuple(parts))


def forall(e: Alpha, ctx: LambdaEnv, sigma) -> object:
    """Conjunction of a valued fact per instance; △ if an instance is."""
    key = _key(e, sigma)
    parts = []
    for a, t in _instances(e, ctx, sigma):
        if t is Truth.INDET:
            parts.append(INDET)
        else:
            parts.append(Lit(ValuedTuple(key + (a,), t is Truth.TRUE)))
    return Conj(tuple(parts))


def eval_lambda(e, ctx: LambdaEnv, sigma=None):
    """Valued formula of ``e``; free variables are bound to singletons by ``sigma``."""
    sigma = dict(sigma or {})
    if isinstance(e, And):
        return Conj((eval_lambda(e.left, ctx, sigma), eval_lambda(e.right, ctx, sigma)))
    if isinstance(e, Or):
        return Disj((eval_lambda(e.left, ctx, sigma), eval_lambda(e.right, ctx, sigma)))
    if isinstance(e, Not):
        return negate(eval_lambda(e.body, ctx, sigma))
    if isinstance(e, Eps):
        return exists(e, ctx, sigma)
    if isinstance(e, Alpha):
        return forall(e, ctx, sigma)
    if isinstance(e, Var):
        raise OrganonError(f"variable {e.name} is not a predication")
    return _atomic(e, ctx, sigma)


def verdict(e, env: Env, valuation: Optional[Valuation] = None, sigma=None) -> Truth:
    ctx = LambdaEnv(env, valuation or closed_world(env))
    return formula_truth(eval_lambda(e, ctx, sigma))
