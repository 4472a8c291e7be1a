"""Seeded random model sets, expressions and structures for checks and tests."""

from __future__ import annotations

import itertools
import random
from typing import Sequence

from .expr import Alpha, And, App, Const, Eps, Not, Or, Var, app
from .kernel import Arrow, Atom, level
from .oracle import Structure


def random_element(rng: random.Random, atoms: Sequence[Atom], max_level: int, ante_size: int = 2,
                   pool: Sequence = ()):
    """An atom or an arrow of level at most ``max_level``.

    With a ``pool``, antecedents are drawn from it (pool elements must have
    level below ``max_level``), which makes applications to pool subsets
    fire far more often than uniformly random antecedents would.
    """
    if max_level == 0 or rng.random() < 0.3:
        return rng.choice(atoms)
    k = rng.choice([0, 1, 1, 2, 2, 3][:ante_size * 2 + 1]) if pool else rng.randint(0, ante_size)
    if pool:
        usable = [x for x in pool if level(x) < max_level]
        ante = rng.sample(usable, min(k, len(usable)))
    else:
        ante = [random_element(rng, atoms, max_level - 1, ante_size) for _ in range(k)]
    return Arrow(ante, random_element(rng, atoms, max_level - 1, ante_size, pool))


def random_modelset(rng: random.Random, atoms: Sequence[Atom], max_level: int = 3,
                    max_size: int = 6, pool: Sequence = ()) -> frozenset:
    n = rng.randint(0, max_size)
    out = set()
    for _ in range(n):
        if pool and rng.random() < 0.4:
            out.add(rng.choice(pool))
        else:
            out.add(random_element(rng, atoms, max_level, pool=pool))
    return frozenset(out)


def element_pool(atoms: Sequence[Atom]) -> list:
    """Atoms plus the constant arrows over them: a small shared vocabulary."""
    return list(atoms) + [Arrow([], a) for a in atoms]


def random_applicative(rng: random.Random, vars: Sequence[str], consts: Sequence[str],
                       depth: int = 4, connectives: bool = False):
    """Application tree over variables and constants (optionally with & and |)."""
    if depth == 0 or rng.random() < 0.3:
        pool = [Var(v) for v in vars] + [Const(c) for c in consts]
        return rng.choice(pool)
    roll = rng.random()
    left = random_applicative(rng, vars, consts, depth - 1, connectives)
    right = random_applicative(rng, vars, consts, depth - 1, connectives)
    if connectives and roll < 0.15:
        return And(left, right)
    if connectives and roll < 0.3:
        return Or(left, right)
    return App(left, right)


def random_structure(rng: random.Random, size: int, relations=(("R", 2), ("P", 1)),
                     density: float = 0.4) -> Structure:
    carrier = [f"a{i}" for i in range(size)]
    rels = {}
    for name, arity in relations:
        tuples = frozenset(t for t in itertools.product(carrier, repeat=arity)
                           if rng.random() < density)
        rels[name] = (arity, tuples)
    return Structure(frozenset(carrier), rels)


def synthetic_family(rng: random.Random, generations: int = 4, size: int = 20) -> Structure:
    """A family of ``size`` people over ``generations`` generations.

    Every person below the first generation gets a father and a mother from
    the generation before, so mothers and fathers are drawn from couples.
    """
    per = [size // generations + (1 if g < size % generations else 0) for g in range(generations)]
    people, gens = [], []
    for g, n in enumerate(per):
        row = [f"g{g}_{i}" for i in range(n)]
        people += row
        gens.append(row)
    sex = {p: rng.choice("mf") for p in people}
    for row in gens:  # each generation needs at least one of each
        sex[row[0]], sex[row[-1]] = "m", "f"
    father, mother = set(), set()
    for g in range(1, generations):
        men = [p for p in gens[g - 1] if sex[p] == "m"]
        women = [p for p in gens[g - 1] if sex[p] == "f"]
        couples = [(rng.choice(men), rng.choice(women)) for _ in range(max(1, len(gens[g - 1]) // 2))]
        for child in gens[g]:
            f, m = rng.choice(couples)
            father.add((f, child))
            mother.add((m, child))
    rels = {
        "father": (2, frozenset(father)),
        "mother": (2, frozenset(mother)),
        "male": (1, frozenset((p,) for p in people if sex[p] == "m")),
        "female": (1, frozenset((p,) for p in people if sex[p] == "f")),
    }
    return Structure(frozenset(people), rels)


def random_formula(rng: random.Random, relations=(("R", 2), ("P", 1)), depth: int = 3,
                   scope=(), names="xyz"):
    """Closed formula over the given relations with nested quantifiers."""
    if (depth == 0 or rng.random() < 0.25) and scope:
        name, arity = rng.choice(relations)
        return app(Const(name), *(Var(rng.choice(scope)) for _ in range(arity)))
    roll = rng.random()
    if not scope or roll < 0.3:
        v = names[len(scope) % len(names)] + ("" if len(scope) < len(names) else str(len(scope)))
        body = random_formula(rng, relations, max(depth - 1, 0), scope + (v,), names)
        return Eps(v, body, kw="exists") if rng.random() < 0.5 else Alpha(v, body, kw="forall")
    if roll < 0.45:
        return Not(random_formula(rng, relations, depth - 1, scope, names))
    left = random_formula(rng, relations, depth - 1, scope, names)
    right = random_formula(rng, relations, depth - 1, scope, names)
    return And(left, right) if roll < 0.75 else Or(left, right)


def random_subset(rng: random.Random, pool: Sequence, lo: int = 0, hi: int = None) -> frozenset:
    hi = len(pool) if hi is None else min(hi, len(pool))
    return frozenset(rng.sample(list(pool), rng.randint(lo, hi)))


def random_function(rng: random.Random, pool: Sequence, size: int = 5, curried: float = 0.5) -> frozenset:
    """Arrows with antecedents from ``pool``; some return arrows again (level <= 3)."""
    out = set()
    for _ in range(rng.randint(1, size)):
        cons = rng.choice(pool)
        if rng.random() < curried:
            cons = Arrow(random_subset(rng, pool, 0, 1), cons)
        out.add(Arrow(random_subset(rng, pool, 0, 2), cons))
    return frozenset(out)
