"""The graph model G(A): elements, application, and the combinators S and K.

Elements are atoms, finite tuples of elements, or arrows ``alpha -> a`` whose
antecedent ``alpha`` is a finite set.  A *model set* is either a plain
``frozenset`` of elements (extensional) or an :class:`Intensional` set, which
knows how to test membership and, usually, how to be applied directly.

Application follows the graph-model rule::

    M . N = { x : (alpha -> x) in M, alpha <= N }
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Union

from .errors import BoundExceeded, ParseError

__all__ = [
    "Atom", "Tup", "Arrow", "Element", "Bounds", "DEFAULT_BOUNDS",
    "Intensional", "ModelSet", "level", "sort_key", "apply", "apply_chain",
    "combinator_K", "combinator_S", "enumerate_set", "universe",
    "parse_element", "print_element", "member", "is_extensional",
]


class Atom:
    __slots__ = ("name", "attrs", "_hash")

    def __init__(self, name: str, attrs: Iterable[str] = ()):
        self.name = name
        self.attrs = frozenset(attrs)
        self._hash = hash(("atom", name))

    def __eq__(self, other):
        return isinstance(other, Atom) and other.name == self.name

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Atom({self.name!r})"

    def __str__(self):
        return self.name


class Tup:
    __slots__ = ("items", "_hash")

    def __init__(self, items: Iterable["Element"]):
        self.items = tuple(items)
        if len(self.items) < 2:
            raise ValueError("tuples need at least two components")
        self._hash = hash(("tup", self.items))

    def __eq__(self, other):
        return isinstance(other, Tup) and other._hash == self._hash and other.items == self.items

    def __hash__(self):
        return self._hash

    def __len__(self):
        return len(self.items)

    def __repr__(self):
        return f"Tup({list(self.items)!r})"

    def __str__(self):
        return print_element(self)


class Arrow:
    __slots__ = ("ante", "cons", "_hash")

    def __init__(self, ante: Iterable["Element"], cons: "Element"):
        self.ante = frozenset(ante)
        self.cons = cons
        self._hash = hash(("arrow", self.ante, cons))

    def __eq__(self, other):
        return (isinstance(other, Arrow) and other._hash == self._hash
                and other.cons == self.cons and other.ante == self.ante)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Arrow({sorted(self.ante, key=sort_key)!r}, {self.cons!r})"

    def __str__(self):
        return print_element(self)


Element = Union[Atom, Tup, Arrow]


def level(e: Element) -> int:
    """Least n with e in G_n(A)."""
    if isinstance(e, Atom):
        return 0
    if isinstance(e, Tup):
        return 1 + max(level(x) for x in e.items)
    return 1 + max([level(e.cons)] + [level(x) for x in e.ante])


def sort_key(e: Element):
    # total structural order: atoms < tuples < arrows
    if isinstance(e, Atom):
        return (0, e.name)
    if isinstance(e, Tup):
        return (1, tuple(sort_key(x) for x in e.items))
    return (2, tuple(sorted(sort_key(x) for x in e.ante)), sort_key(e.cons))


@dataclass(frozen=True)
class Bounds:
    level_bound: int = 6
    set_size_bound: int = 8
    enum_cap: int = 100_000

    def __post_init__(self):
        for name in ("level_bound", "set_size_bound", "enum_cap"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")

    @classmethod
    def parse(cls, text: str) -> "Bounds":
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 3:
            raise ValueError("bounds must be given as L,S,C")
        return cls(*(int(p) for p in parts))

    def __str__(self):
        return f"{self.level_bound},{self.set_size_bound},{self.enum_cap}"


DEFAULT_BOUNDS = Bounds()


class Intensional:
    """A possibly infinite subset of G(A) given by a membership test.

    ``rule(N, bounds)`` computes ``self . N`` without enumerating ``self``;
    ``enum(bounds)`` lists the members within bounds.
    """

    def __init__(self, name: str, member: Callable[[Element], bool],
                 rule: Optional[Callable] = None, enum: Optional[Callable] = None):
        self.name = name
        self.member = member
        self.rule = rule
        self.enum = enum

    def __contains__(self, e):
        return self.member(e)

    def __repr__(self):
        return f"<intensional {self.name}>"


ModelSet = Union[frozenset, Intensional]


def is_extensional(m) -> bool:
    return not isinstance(m, Intensional)


def member(m: ModelSet, e: Element) -> bool:
    return m.member(e) if isinstance(m, Intensional) else e in m


def _check_cap(count: int, b: Bounds, what: str):
    if count > b.enum_cap:
        raise BoundExceeded(f"{what}: {count} elements exceed enum_cap={b.enum_cap}")


def _within(e: Element, b: Bounds) -> bool:
    if isinstance(e, Atom):
        return True
    if isinstance(e, Tup):
        return len(e.items) <= b.set_size_bound and all(_within(x, b) for x in e.items)
    return (len(e.ante) <= b.set_size_bound and _within(e.cons, b)
            and all(_within(x, b) for x in e.ante))


def enumerate_set(m: ModelSet, b: Bounds = DEFAULT_BOUNDS) -> frozenset:
    """Members of ``m`` with level <= level_bound and antecedents <= set_size_bound."""
    if isinstance(m, Intensional):
        if m.enum is None:
            raise BoundExceeded(f"{m.name} cannot be enumerated")
        out = m.enum(b)
    else:
        out = frozenset(e for e in m if level(e) <= b.level_bound and _within(e, b))
    _check_cap(len(out), b, "enumerate")
    return out


def apply(m: ModelSet, n: ModelSet, b: Bounds = DEFAULT_BOUNDS) -> ModelSet:
    """Graph-model application ``m . n``."""
    if isinstance(m, Intensional):
        if m.rule is not None:
            return m.rule(n, b)
        m = enumerate_set(m, b)
    test = n.member if isinstance(n, Intensional) else n.__contains__
    out = set()
    for e in m:
        if isinstance(e, Arrow) and e.cons not in out and all(test(x) for x in e.ante):
            out.add(e.cons)
    return frozenset(out)


def apply_chain(m: ModelSet, args: Iterable[ModelSet], b: Bounds = DEFAULT_BOUNDS) -> ModelSet:
    for a in args:
        m = apply(m, a, b)
    return m


def _subsets(items, max_size=None):
    items = list(items)
    top = len(items) if max_size is None else min(max_size, len(items))
    for k in range(top + 1):
        for combo in itertools.combinations(items, k):
            yield frozenset(combo)


def universe(atoms: Iterable[Atom], lvl: int, b: Bounds = DEFAULT_BOUNDS) -> frozenset:
    """All tuple-free elements over ``atoms`` of level <= lvl (antecedents bounded)."""
    current = frozenset(atoms)
    for _ in range(max(lvl, 0)):
        pool = sorted(current, key=sort_key)
        n_sets = sum(math.comb(len(pool), k) for k in range(min(b.set_size_bound, len(pool)) + 1))
        _check_cap(n_sets * len(pool), b, "universe")
        nxt = set(current)
        for alpha in _subsets(pool, b.set_size_bound):
            for a in pool:
                nxt.add(Arrow(alpha, a))
        current = frozenset(nxt)
    return current


# -- K ------------------------------------------------------------------------

def _k_member(e) -> bool:
    return (isinstance(e, Arrow) and len(e.ante) == 1 and isinstance(e.cons, Arrow)
            and not e.cons.ante and e.cons.cons in e.ante)


def _k1(m: ModelSet) -> ModelSet:
    """K . M = { {} -> a : a in M }."""
    if not isinstance(m, Intensional):
        return frozenset(Arrow((), a) for a in m)

    def mem(e):
        return isinstance(e, Arrow) and not e.ante and m.member(e.cons)

    def enum(b):
        return frozenset(Arrow((), a) for a in enumerate_set(m, b))

    return Intensional(f"K.{m.name}", mem, rule=lambda n, b: m, enum=enum)


def combinator_K(atoms: Iterable[Atom] = ()) -> Intensional:
    """[K] = { {a} -> ({} -> a) }.  ``atoms`` only matters for enumeration."""
    atoms = frozenset(atoms)

    def enum(b):
        if b.level_bound < 2:
            return frozenset()
        base = universe(atoms, b.level_bound - 2, b)
        return frozenset(Arrow([a], Arrow((), a)) for a in base)

    return Intensional("K", _k_member, rule=lambda m, b: _k1(m), enum=enum)


# -- S ------------------------------------------------------------------------
# [S] = { {tau -> ({r1..rn} -> s)} -> ({sigma_i -> r_i} -> (sigma -> s)) :
#         tau u sigma_1 u ... u sigma_n = sigma }

def _split_inner(x):
    """Read ``tau -> (R -> s)``; None when x has another shape."""
    if isinstance(x, Arrow) and isinstance(x.cons, Arrow):
        return x.ante, x.cons.ante, x.cons.cons
    return None


def _s_member(e) -> bool:
    if not (isinstance(e, Arrow) and len(e.ante) == 1):
        return False
    (inner,) = e.ante
    parts = _split_inner(inner)
    rest = e.cons
    if parts is None or not isinstance(rest, Arrow) or not isinstance(rest.cons, Arrow):
        return False
    tau, big_r, s = parts
    beta, sigma, s2 = rest.ante, rest.cons.ante, rest.cons.cons
    if s2 != s or not all(isinstance(x, Arrow) for x in beta):
        return False
    if frozenset(x.cons for x in beta) != big_r:
        return False
    union = set(tau)
    for x in beta:
        union |= x.ante
    return union == sigma


def _s1_member(m: ModelSet, e) -> bool:
    """Membership in S . M."""
    if not (isinstance(e, Arrow) and isinstance(e.cons, Arrow)):
        return False
    beta, sigma, s = e.ante, e.cons.ante, e.cons.cons
    if not all(isinstance(x, Arrow) for x in beta):
        return False
    big_r = frozenset(x.cons for x in beta)
    covered = frozenset().union(*(x.ante for x in beta)) if beta else frozenset()
    if not covered <= sigma:
        return False
    need = sigma - covered
    if not isinstance(m, Intensional):
        for x in m:
            parts = _split_inner(x)
            if parts and parts[1] == big_r and parts[2] == s and need <= parts[0] <= sigma:
                return True
        return False
    for extra in _subsets(covered):
        if m.member(Arrow(need | extra, Arrow(big_r, s))):
            return True
    return False


def _s1_apply_exact(m: frozenset, n: frozenset, b: Bounds) -> frozenset:
    by_cons = {}
    for x in n:
        if isinstance(x, Arrow):
            by_cons.setdefault(x.cons, []).append(x)
    out = set()
    work = 0
    for x in m:
        parts = _split_inner(x)
        if parts is None:
            continue
        tau, big_r, s = parts
        pools = []
        for r in sorted(big_r, key=sort_key):
            cands = by_cons.get(r, [])
            if not cands:
                break
            if len(cands) > b.set_size_bound:
                raise BoundExceeded(f"{len(cands)} arrows into one r exceed set_size_bound")
            pools.append([s_ for s_ in _subsets(cands) if s_])
        else:
            work += math.prod(len(p) for p in pools)
            _check_cap(work, b, "S application")
            for choice in itertools.product(*pools):
                sigma = set(tau)
                for group in choice:
                    for arrow in group:
                        sigma |= arrow.ante
                out.add(Arrow(sigma, s))
    return frozenset(out)


def _s2_member(m: ModelSet, n: ModelSet, e, b: Bounds) -> bool:
    """Membership of ``sigma -> s`` in S . M . N."""
    if not isinstance(e, Arrow):
        return False
    sigma, s = e.ante, e.cons
    if len(sigma) > b.set_size_bound:
        raise BoundExceeded("antecedent exceeds set_size_bound")
    # valid[r] = union of all sigma_r <= sigma with (sigma_r -> r) in N
    valid = {}
    if not isinstance(n, Intensional):
        for x in n:
            if isinstance(x, Arrow) and x.ante <= sigma:
                valid.setdefault(x.cons, set()).update(x.ante)
    else:
        cands = apply(n, sigma, b)
        if isinstance(cands, Intensional):
            cands = enumerate_set(cands, b)
        subs = list(_subsets(sigma))
        for r in cands:
            for sub in subs:
                if n.member(Arrow(sub, r)):
                    valid.setdefault(r, set()).update(sub)
    if not isinstance(m, Intensional):
        for x in m:
            parts = _split_inner(x)
            if parts is None:
                continue
            tau, big_r, s_ = parts
            if s_ != s or not tau <= sigma or not all(r in valid for r in big_r):
                continue
            cover = set(tau)
            for r in big_r:
                cover |= valid[r]
            if cover >= sigma:
                return True
        return False
    rs = sorted(valid, key=sort_key)
    work = 2 ** len(rs) * 2 ** len(sigma)
    _check_cap(work, b, "S membership")
    for big_r in _subsets(rs):
        cover_r = set().union(*(valid[r] for r in big_r)) if big_r else set()
        for tau in _subsets(sigma):
            if (cover_r | tau) >= sigma and m.member(Arrow(tau, Arrow(big_r, s))):
                return True
    return False


def _s2_lazy(m: ModelSet, n: ModelSet, b: Bounds) -> Intensional:
    # S.M.N.P = (M.P).(N.P); used when M or N cannot be read off extensionally
    return Intensional(
        "S.M.N",
        lambda e: _s2_member(m, n, e, b),
        rule=lambda p, bb: apply(apply(m, p, bb), apply(n, p, bb), bb),
    )


def _s1(m: ModelSet) -> Intensional:
    def rule(n, b):
        if not isinstance(m, Intensional) and not isinstance(n, Intensional):
            return _s1_apply_exact(m, n, b)
        return _s2_lazy(m, n, b)

    return Intensional("S.M", lambda e: _s1_member(m, e), rule=rule)


def combinator_S(atoms: Iterable[Atom] = ()) -> Intensional:
    atoms = frozenset(atoms)

    def enum(b):
        if b.level_bound < 3:
            return frozenset()
        pool = sorted(universe(atoms, b.level_bound - 3, b), key=sort_key)
        size = b.set_size_bound
        out = set()
        for tau in _subsets(pool, size):
            for big_r in _subsets(pool, size):
                rs = sorted(big_r, key=sort_key)
                choices = list(_subsets(pool, size))
                _check_cap(len(out) + len(choices) ** len(rs), b, "S enumeration")
                for s in pool:
                    for sigmas in itertools.product(choices, repeat=len(rs)):
                        sigma = frozenset(tau).union(*sigmas)
                        if len(sigma) > size:
                            continue
                        inner = Arrow([Arrow(tau, Arrow(big_r, s))],
                                      Arrow([Arrow(sg, r) for sg, r in zip(sigmas, rs)],
                                            Arrow(sigma, s)))
                        if level(inner) <= b.level_bound:
                            out.add(inner)
                _check_cap(len(out), b, "S enumeration")
        return frozenset(out)

    return Intensional("S", _s_member, rule=lambda m, b: _s1(m), enum=enum)


# -- text form ----------------------------------------------------------------

def print_element(e: Element) -> str:
    if isinstance(e, Atom):
        return e.name
    if isinstance(e, Tup):
        return "<" + ",".join(print_element(x) for x in e.items) + ">"
    ante = ",".join(print_element(x) for x in sorted(e.ante, key=sort_key))
    return "({" + ante + "} -> " + print_element(e.cons) + ")"


_TOKEN = re.compile(r"\s*(->|[A-Za-z_][A-Za-z0-9_']*|[(){}<>,])")


def parse_element(text: str) -> Element:
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r}", 1,
                             len(text[:pos]) + 1 + (len(text[pos:]) - len(text[pos:].lstrip())))
        toks.append((m.group(1), m.start(1)))
        pos = m.end()
    i = 0

    def peek():
        return toks[i][0] if i < len(toks) else None

    def expect(t):
        nonlocal i
        if peek() != t:
            col = toks[i][1] + 1 if i < len(toks) else len(text) + 1
            raise ParseError(f"expected {t!r}, found {peek()!r}", 1, col)
        i += 1

    def elem():
        nonlocal i
        t = peek()
        if t is None:
            raise ParseError("unexpected end of input", 1, len(text) + 1)
        if t == "<":
            i += 1
            items = [elem()]
            while peek() == ",":
                i += 1
                items.append(elem())
            expect(">")
            if len(items) < 2:
                raise ParseError("tuple needs two or more components", 1, toks[i - 1][1] + 1)
            return Tup(items)
        if t == "(":
            i += 1
            expect("{")
            ante = []
            if peek() != "}":
                ante.append(elem())
                while peek() == ",":
                    i += 1
                    ante.append(elem())
            expect("}")
            expect("->")
            cons = elem()
            expect(")")
            return Arrow(ante, cons)
        if re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", t):
            i += 1
            return Atom(t)
        raise ParseError(f"unexpected token {t!r}", 1, toks[i][1] + 1)

    e = elem()
    if i != len(toks):
        raise ParseError(f"trailing input {peek()!r}", 1, toks[i][1] + 1)
    return e
