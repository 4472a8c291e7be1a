"""Factual semantics: predications as fact sets, ext, the epsilon and alpha
operators, connectives, three-valued truth, categorical forms and recursion.

Two evaluators live here.  :func:`evaluate` is the set-level reading, where
variables denote arbitrary subsets of G(A), application is the kernel
operation and the connectives are intersection, union and ext-relative
complement.  :func:`holds` / :func:`term_value` read a definition body at
singleton arguments; :func:`define` uses them to materialise a defined
predicate as a relation (comprehension at singleton antecedents).
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence

from . import kernel
from .comprehension import intersect, union
from .encode import class_set, decode_relation, ext_set, relation_set
from .errors import (BoundExceeded, NoConvergence, NonMonotone, OrganonError,
                     SeedInvalid, UnboundName)
from .expr import (Alpha, And, App, Comb, Const, Eps, Not, Or, Rec, SetLit, Var,
                   free_vars, not_wraps)
from .kernel import DEFAULT_BOUNDS, Atom, Bounds, Intensional, sort_key


class Truth(enum.Enum):
    TRUE = "⊤"
    FALSE = "⊥"
    INDET = "△"

    def __str__(self):
        return self.value


@dataclass
class FixpointRecord:
    """One finished fixpoint computation, with enough to re-check it."""

    kind: str
    label: str
    iterations: int
    chain_monotone: bool
    verified: bool
    size: int
    chain: tuple = field(default=(), repr=False)
    step: object = field(default=None, repr=False)


@dataclass
class FixpointLog:
    records: List[FixpointRecord] = field(default_factory=list)

    def total_iterations(self) -> int:
        return sum(r.iterations for r in self.records)


@dataclass
class Env:
    """Interpretation of names: atoms, classes, relations and defined predicates."""

    carrier: frozenset = frozenset()
    values: Dict[str, kernel.ModelSet] = field(default_factory=dict)
    arities: Dict[str, int] = field(default_factory=dict)
    relations: Dict[str, frozenset] = field(default_factory=dict)
    bounds: Bounds = DEFAULT_BOUNDS
    log: FixpointLog = field(default_factory=FixpointLog)
    seed_overrides: Dict[str, object] = field(default_factory=dict)

    def lookup(self, name):
        if name not in self.values:
            raise UnboundName(name)
        return self.values[name]

    def add_atoms(self, names):
        new = frozenset(Atom(n) for n in names)
        self.carrier = self.carrier | new
        for a in new:
            self.values.setdefault(a.name, frozenset([a]))

    def add_relation(self, name, arity, tuples):
        """Bind a relation given as tuples of atoms or atom names."""
        tuples = frozenset(tuple(a if isinstance(a, Atom) else Atom(a) for a in t)
                           for t in tuples)
        if any(len(t) != arity for t in tuples):
            raise OrganonError(f"{name}: tuple arity differs from {arity}")
        self.arities[name] = arity
        self.relations[name] = tuples
        self.values[name] = relation_set(tuples)

    def relation_names(self, name) -> frozenset:
        return frozenset(tuple(a.name for a in t) for t in self.relations[name])

    def sort_range(self, sort) -> frozenset:
        if sort is None:
            return self.carrier
        return ext_set(self.lookup(sort), 1)


# -- fixpoints -----------------------------------------------------------------

def _finite(x, what):
    if isinstance(x, Intensional):
        raise BoundExceeded(f"{what} is not a finite set")
    return x


def kleene(step, seed: frozenset, b: Bounds = DEFAULT_BOUNDS, log: FixpointLog = None,
           label: str = "", kind: str = "eps") -> frozenset:
    """Union of the chain seed <= step(seed) <= step^2(seed) <= ...

    Raises SeedInvalid when the seed is not below its image, and verifies
    step(F) == F on the result.
    """
    f = _finite(seed, "seed")
    nxt = _finite(step(f), "step(seed)")
    if not f <= nxt:
        raise SeedInvalid(f"{label}: seed is not contained in its image")
    chain = [f]
    while nxt != f:
        if not f <= nxt:
            raise NonMonotone(f"{label}: Kleene chain decreased at step {len(chain)}")
        if len(chain) >= b.enum_cap:
            raise NoConvergence(f"{label}: no fixpoint after {len(chain)} steps")
        f = nxt
        chain.append(f)
        nxt = _finite(step(f), "step")
    verified = step(f) == f
    if log is not None:
        log.records.append(FixpointRecord(kind, label, len(chain), True, verified, len(f),
                                          tuple(chain), step))
    if not verified:
        raise NoConvergence(f"{label}: result is not a fixpoint")
    return f


# -- set-level evaluation ---------------------------------------------------------

def _ranges(e, env: Env, binding):
    """Binding with every free variable of ``e`` not in ``binding`` at the carrier."""
    full = dict(binding)
    for v in free_vars(e):
        full.setdefault(v, env.carrier)
    return full


def positive(e):
    """``e`` with leading negations removed; a negation shares its ext."""
    while isinstance(e, Not):
        e = e.body
    return e


def ext_of(e, env: Env, binding, var: Optional[str] = None, sort=None):
    """Possible values of ``e``: ``var`` (if given) and unbound variables range fully."""
    bnd = dict(binding)
    if var is not None:
        bnd[var] = env.sort_range(sort)
    return evaluate(e, env, _ranges(e, env, bnd))


def _seed_value(seed, var, e_ext, env: Env, binding):
    if var in env.seed_overrides:
        seed = env.seed_overrides[var]
    if seed is None:
        return frozenset()
    if isinstance(seed, frozenset):
        return seed
    if seed == "ext":
        return e_ext()
    return _finite(evaluate(seed, env, binding), "seed")


def evaluate(e, env: Env, binding: Mapping[str, kernel.ModelSet]):
    """Set-level factual value of ``e`` with variables bound to model sets."""
    b = env.bounds
    if isinstance(e, Var):
        if e.name not in binding:
            raise UnboundName(e.name)
        return binding[e.name]
    if isinstance(e, Const):
        return env.lookup(e.name)
    if isinstance(e, SetLit):
        return frozenset(Atom(n) for n in e.names)
    if isinstance(e, Comb):
        return kernel.combinator_S() if e.name == "S" else kernel.combinator_K()
    if isinstance(e, App):
        return kernel.apply(evaluate(e.fn, env, binding), evaluate(e.arg, env, binding), b)
    if isinstance(e, And):
        return intersect(evaluate(e.left, env, binding), evaluate(e.right, env, binding))
    if isinstance(e, Or):
        return union(evaluate(e.left, env, binding), evaluate(e.right, env, binding))
    if isinstance(e, Not):
        value = _finite(evaluate(e.body, env, binding), "negated predication")
        return _finite(ext_of(positive(e.body), env, {}), "ext") - value
    if isinstance(e, Eps):
        if not_wraps(e.body, e.var):
            raise NonMonotone(f"eps {e.var}: body is not monotone in {e.var}")

        def step(x):
            return evaluate(e.body, env, {**binding, e.var: x})

        seed = _seed_value(e.seed, e.var, lambda: ext_of(e.body, env, binding, e.var, e.sort),
                           env, binding)
        return kleene(step, seed, b, env.log, f"eps {e.var}")
    if isinstance(e, Alpha):
        ext = ext_of(e.body, env, binding, e.var, e.sort)
        return evaluate(e.body, env, {**binding, e.var: ext})
    if isinstance(e, Rec):
        if not_wraps(e.body, e.var):
            raise NonMonotone(f"rec {e.var}: recursion variable under negation")
        seed = _seed_value(e.seed, e.var, lambda: frozenset(), env, binding)
        return kleene(lambda x: evaluate(e.body, env, {**binding, e.var: x}), seed, b,
                      env.log, f"rec {e.var}", kind="rec")
    raise OrganonError(f"cannot evaluate {e!r}")


# -- predications --------------------------------------------------------------

@dataclass
class Predication:
    head: object
    params: tuple
    env: Env

    @property
    def arity(self):
        return len(self.params)


def eval_factual(p: Predication, args: Sequence[kernel.ModelSet]):
    if len(args) != p.arity:
        raise OrganonError(f"predication takes {p.arity} arguments, got {len(args)}")
    return evaluate(p.head, p.env, dict(zip(p.params, args)))


def ext(p: Predication, j: Optional[int] = None) -> frozenset:
    """Possible values of the predication, all arguments ranging over the carrier.

    The separated forms for the different slots share their consequents, so
    ``j`` only selects which slot is moved last before evaluation.
    """
    params = list(p.params)
    if j is not None:
        params.append(params.pop(j - 1))
    return _finite(evaluate(positive(p.head), p.env, {v: p.env.carrier for v in params}), "ext")


def _insert(args, j, x):
    args = list(args)
    args.insert(j - 1, x)
    return args


def eps(p: Predication, j: int, seed, args_minus_j: Sequence[kernel.ModelSet]) -> frozenset:
    """Least fixpoint above ``seed`` of ``X -> p(.., X at slot j, ..)``.

    ``seed`` is a finite set, ``"ext"``, or None for the empty seed.
    """
    var = p.params[j - 1]
    if not_wraps(p.head, var):
        raise NonMonotone(f"eps over slot {j}: predication is not monotone there")

    def step(x):
        return eval_factual(p, _insert(args_minus_j, j, x))

    if seed is None:
        seed = frozenset()
    elif isinstance(seed, str) and seed == "ext":
        seed = ext(p, j)
    return kleene(step, frozenset(seed), p.env.bounds, p.env.log, f"eps slot {j}")


def alpha(p: Predication, j: int, args_minus_j: Sequence[kernel.ModelSet]):
    """The predication with slot ``j`` filled by its ext."""
    return eval_factual(p, _insert(args_minus_j, j, ext(p, j)))


def neg_factual(p: Predication, args) -> frozenset:
    return ext(p, p.arity) - _finite(eval_factual(p, args), "predication")


def truth_of(value: frozenset, extents: Sequence[frozenset]) -> Truth:
    """Three-valued verdict of a fact set against the ext of each slot."""
    if any(not e for e in extents):
        return Truth.INDET
    if all(value == e for e in extents):
        return Truth.TRUE
    if value and any(value < e for e in extents):
        return Truth.FALSE
    return Truth.INDET


def truth(p: Predication, args) -> Truth:
    value = _finite(eval_factual(p, args), "predication")
    return truth_of(value, [ext(p, j) for j in range(1, p.arity + 1)])


# -- categorical forms over class-encoded predicates -----------------------------

def _class_pred(m, env: Env) -> Predication:
    env2 = Env(env.carrier, {**env.values, "_P": m}, bounds=env.bounds, log=env.log)
    return Predication(App(Const("_P"), Var("x")), ("x",), env2)


def _witness_truth(w: frozenset, env: Env) -> Truth:
    """The class of ``w`` applied to its own epsilon referent (seed ext)."""
    cw = _class_pred(class_set(w), env)
    ref = eps(cw, 1, "ext", [])
    return truth(cw, [ref])


def categorical(form: str, pm: kernel.ModelSet, qm: kernel.ModelSet, env: Env) -> Truth:
    """Verdict of a categorical statement about class-encoded P and Q.

    all P are Q   : P applied to alpha_x(Q x), judged against ext P
    no P is Q     : not-Q applied to eps_x(P x) (seed ext), judged against ext Q
    some P are Q  : the facts Q . eps_x(P x) have a nonempty epsilon referent
    some P not Q  : the facts not-P . alpha_x(Q x) have a nonempty epsilon referent
    """
    p, q = _class_pred(pm, env), _class_pred(qm, env)
    if form == "all":
        return truth(p, [alpha(q, 1, [])])
    if form == "no":
        value = neg_factual(q, [eps(p, 1, "ext", [])])
        return truth_of(value, [ext(q, 1)])
    if form == "some":
        return _witness_truth(_finite(eval_factual(q, [eps(p, 1, "ext", [])]), "facts"), env)
    if form == "some-not":
        return _witness_truth(neg_factual(p, [alpha(q, 1, [])]), env)
    raise OrganonError(f"unknown categorical form {form!r}")


# -- pointwise reading of definition bodies ---------------------------------------

def _single(a):
    return frozenset([a])


def witnesses(var, body, env: Env, sigma, sort=None) -> frozenset:
    return frozenset(a for a in env.sort_range(sort)
                     if holds(body, env, {**sigma, var: _single(a)}))


def _eps_set(e: Eps, env: Env, sigma) -> frozenset:
    w = witnesses(e.var, e.body, env, sigma, e.sort)
    sep = class_set(w)  # the separated predicate for the bound slot

    def step(x):
        return kernel.apply(sep, x, env.bounds)

    seed = _seed_value(e.seed, e.var, lambda: w, env, sigma)
    return kleene(step, _finite(seed, "seed"), env.bounds, env.log, f"eps {e.var}")


def term_value(e, env: Env, sigma):
    """Set value of a term inside an application, at a pointwise binding."""
    if isinstance(e, Eps):
        if not_wraps(e.body, e.var):
            raise NonMonotone(f"eps {e.var}: body is not monotone in {e.var}")
        return _eps_set(e, env, sigma)
    if isinstance(e, Alpha):
        return witnesses(e.var, e.body, env, sigma, e.sort)
    if isinstance(e, App):
        return kernel.apply(term_value(e.fn, env, sigma), term_value(e.arg, env, sigma), env.bounds)
    if isinstance(e, And):
        return intersect(term_value(e.left, env, sigma), term_value(e.right, env, sigma))
    if isinstance(e, Or):
        return union(term_value(e.left, env, sigma), term_value(e.right, env, sigma))
    if isinstance(e, Not):
        value = _finite(term_value(e.body, env, sigma), "negated term")
        return _finite(ext_of(positive(e.body), env, {}), "ext") - value
    if isinstance(e, Rec):
        raise OrganonError("rec may only head a definition body")
    return evaluate(e, env, sigma)


def holds(e, env: Env, sigma) -> bool:
    """Whether a body holds at a binding of its variables to singletons."""
    if isinstance(e, And):
        return holds(e.left, env, sigma) and holds(e.right, env, sigma)
    if isinstance(e, Or):
        return holds(e.left, env, sigma) or holds(e.right, env, sigma)
    if isinstance(e, Not):
        return not holds(e.body, env, sigma)
    if isinstance(e, Eps):
        return bool(term_value(e, env, sigma))
    if isinstance(e, Alpha):
        return witnesses(e.var, e.body, env, sigma, e.sort) == env.sort_range(e.sort)
    value = term_value(e, env, sigma)
    if isinstance(value, Intensional):
        raise BoundExceeded("predication produced an infinite fact set")
    return bool(value)


def relation_of(body, params, env: Env, extra=None) -> frozenset:
    atoms = sorted(env.carrier, key=sort_key)
    extra = extra or {}
    out = set()
    kernel._check_cap(len(atoms) ** len(params), env.bounds, "definition domain")
    for t in itertools.product(atoms, repeat=len(params)):
        sigma = {**extra, **{v: _single(a) for v, a in zip(params, t)}}
        if holds(body, env, sigma):
            out.add(t)
    return frozenset(out)


def rec_define(name, params, body, var, env: Env, seed=None) -> frozenset:
    """Least fixpoint above ``seed`` of ``U -> [[body with U]]`` (as relations)."""
    if not_wraps(body, var):
        raise NonMonotone(f"{name}: recursion variable {var} occurs under negation")
    n = len(params)

    def step(x):
        return relation_set(relation_of(body, params, env, {var: x}))

    start = relation_set(seed) if seed else frozenset()
    encoded = kleene(step, start, env.bounds, env.log, f"rec {name}", kind="rec")
    return decode_relation(encoded, n) if n else frozenset()


def define(name, params, body, env: Env) -> frozenset:
    """Materialise ``name params := body`` as a relation and bind it in ``env``."""
    if name in env.values:
        raise OrganonError(f"{name} is already defined")
    params = tuple(params)
    if isinstance(body, Rec):
        seed_expr = env.seed_overrides.get(body.var, body.seed)
        if isinstance(seed_expr, str):
            raise SeedInvalid(f"{name}: rec seeds must be relation-valued expressions")
        seed = None
        if seed_expr is not None:
            seed = decode_relation(_finite(evaluate(seed_expr, env, {}), "seed"), len(params))
        rel = rec_define(name, params, body.body, body.var, env, seed)
    else:
        rel = relation_of(body, params, env)
    env.add_relation(name, len(params), rel)
    return rel
