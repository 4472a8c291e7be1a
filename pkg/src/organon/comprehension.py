"""Comprehension: from expressions with variables to single model sets.

Two routes are provided.  :func:`abstract` eliminates variables syntactically
in favour of S and K (bracket abstraction), and :func:`comprehend` builds the
graph ``{a1 -> (... (an -> a)) : a in phi(a1, .., an)}`` of an expression as an
intensional set whose application just evaluates the body.
"""

from __future__ import annotations

from typing import Callable, Mapping, Sequence

from . import kernel
from .errors import BoundExceeded, NonMonotone, NotApplicative, OrganonError, UnboundName
from .expr import (K, S, And, App, Comb, Const, Not, Or, SetLit, Var,
                   contains_not, free_vars, is_applicative)
from .kernel import DEFAULT_BOUNDS, Arrow, Atom, Bounds, Intensional

Env = Mapping[str, kernel.ModelSet]


def _abstract1(x: str, t):
    if isinstance(t, Var) and t.name == x:
        return App(App(S, K), K)
    if x not in free_vars(t):
        return App(K, t)
    if isinstance(t, App):
        return App(App(S, _abstract1(x, t.fn)), _abstract1(x, t.arg))
    raise OrganonError(f"cannot abstract over {t!r}")


def abstract(e, vars: Sequence[str]):
    """S/K term ``T`` with ``T x1 .. xn = e`` (vars abstracted innermost-last)."""
    if not is_applicative(e):
        raise NotApplicative("abstraction needs a purely applicative expression")
    extra = free_vars(e) - set(vars)
    if extra:
        raise NotApplicative(f"free variables not listed: {sorted(extra)}")
    t = e
    for x in reversed(vars):
        t = _abstract1(x, t)
    return t


def eval_term(t, env: Env, b: Bounds = DEFAULT_BOUNDS, atoms=()):
    """Evaluate a closed applicative term with kernel S, K and ``env`` constants."""
    if isinstance(t, Comb):
        return kernel.combinator_S(atoms) if t.name == "S" else kernel.combinator_K(atoms)
    if isinstance(t, Const):
        if t.name not in env:
            raise UnboundName(t.name)
        return env[t.name]
    if isinstance(t, SetLit):
        return frozenset(Atom(n) for n in t.names)
    if isinstance(t, App):
        return kernel.apply(eval_term(t.fn, env, b, atoms), eval_term(t.arg, env, b, atoms), b)
    raise OrganonError(f"not a closed applicative term: {t!r}")


def intersect(x, y):
    if isinstance(x, Intensional) and isinstance(y, Intensional):
        return Intensional(f"({x.name} & {y.name})", lambda e: x.member(e) and y.member(e))
    if isinstance(x, Intensional):
        x, y = y, x
    return frozenset(e for e in x if kernel.member(y, e))


def union(x, y):
    if not isinstance(x, Intensional) and not isinstance(y, Intensional):
        return x | y
    return Intensional(
        f"({getattr(x, 'name', 'set')} | {getattr(y, 'name', 'set')})",
        lambda e: kernel.member(x, e) or kernel.member(y, e),
        # application distributes over union in the function position
        rule=lambda n, b: union(kernel.apply(x, n, b), kernel.apply(y, n, b)),
    )


def eval_monotone(e, env: Env, binding: Mapping[str, kernel.ModelSet], b: Bounds = DEFAULT_BOUNDS):
    """Evaluate a Not-free expression built from application, & and |."""
    if isinstance(e, Var):
        return binding[e.name]
    if isinstance(e, Const):
        if e.name not in env:
            raise UnboundName(e.name)
        return env[e.name]
    if isinstance(e, SetLit):
        return frozenset(Atom(n) for n in e.names)
    if isinstance(e, App):
        return kernel.apply(eval_monotone(e.fn, env, binding, b), eval_monotone(e.arg, env, binding, b), b)
    if isinstance(e, And):
        return intersect(eval_monotone(e.left, env, binding, b), eval_monotone(e.right, env, binding, b))
    if isinstance(e, Or):
        return union(eval_monotone(e.left, env, binding, b), eval_monotone(e.right, env, binding, b))
    if isinstance(e, Not):
        raise NonMonotone("negation cannot be comprehended")
    raise OrganonError(f"unsupported under comprehension: {type(e).__name__}")


Evaluator = Callable[..., kernel.ModelSet]


class Comprehension(Intensional):
    """Curried graph of an expression; ``bound`` holds the arguments seen so far."""

    def __init__(self, e, vars, env, b, evaluate, bound=()):
        self.expr, self.vars, self.env, self.bounds = e, tuple(vars), env, b
        self.evaluate, self.bound = evaluate, tuple(bound)
        super().__init__(f"comp[{len(self.bound)}/{len(self.vars)}]", self._member, rule=self._rule)

    def _run(self, args):
        return self.evaluate(self.expr, self.env, dict(zip(self.vars, args)), self.bounds)

    def _rule(self, n, b):
        args = self.bound + (n,)
        if len(args) == len(self.vars):
            return self._run(args)
        return Comprehension(self.expr, self.vars, self.env, self.bounds, self.evaluate, args)

    def _member(self, x):
        ants = []
        for _ in range(len(self.vars) - len(self.bound)):
            if not isinstance(x, Arrow):
                return False
            ants.append(x.ante)
            x = x.cons
        return kernel.member(self._run(self.bound + tuple(ants)), x)


def comprehend(e, vars: Sequence[str], env: Env, b: Bounds = DEFAULT_BOUNDS,
               evaluate: Evaluator = eval_monotone):
    """Model set M with ``M X1 .. Xn = e[x_i := X_i]``."""
    if contains_not(e):
        raise NonMonotone("negation cannot be comprehended into a single set")
    extra = free_vars(e) - set(vars)
    if extra:
        raise OrganonError(f"free variables not listed: {sorted(extra)}")
    if not vars:
        return evaluate(e, env, {}, b)
    return Comprehension(e, vars, env, b, evaluate)


def materialize(m, args: Sequence[frozenset], b: Bounds = DEFAULT_BOUNDS) -> frozenset:
    """Finite part of ``m`` recording the given arguments as antecedents."""
    result = kernel.apply_chain(m, args, b)
    if isinstance(result, Intensional):
        raise BoundExceeded("comprehension result is not finite")
    if any(isinstance(a, Intensional) for a in args):
        raise BoundExceeded("materialize needs finite arguments")
    out = set()
    for a in result:
        x = a
        for alpha in reversed(args):
            x = Arrow(alpha, x)
        out.add(x)
    kernel._check_cap(len(out), b, "materialize")
    return frozenset(out)


def separate(e, j: int, vars: Sequence[str]):
    """Move variable ``j`` (1-based) to the last argument slot.

    Returns ``(e, new_vars)``: comprehending ``e`` over ``new_vars`` gives a set
    that, applied to the reordered arguments, agrees with the original.
    """
    vars = list(vars)
    if not 1 <= j <= len(vars):
        raise IndexError(f"slot {j} out of range 1..{len(vars)}")
    x = vars.pop(j - 1)
    return e, tuple(vars) + (x,)
