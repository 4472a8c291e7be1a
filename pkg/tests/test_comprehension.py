import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from organon import kernel, oracle
from organon.comprehension import abstract, comprehend, eval_term, materialize, separate
from organon.encode import class_set, relation_set
from organon.errors import NonMonotone, NotApplicative, OrganonError, UnboundName
from organon.expr import K, S, App, Const, Var
from organon.generators import element_pool, random_applicative, random_function, random_subset
from organon.kernel import Arrow, Atom
from organon.lang import parse_expr

a, b, c = (Atom(n) for n in "abc")
ATOMS = [a, b, c]

MOTHER = relation_set([(Atom("Phastia"), Atom("Aristotle")),
                       (Atom("Phastia"), Atom("Arimnestus")),
                       (Atom("Arimneste"), Atom("Phastia"))])
PEOPLE = sorted({t for x in MOTHER for t in (next(iter(x.ante)), x.cons.cons)}, key=kernel.sort_key)


def test_abstract_identity_and_constant():
    x = Var("x")
    assert abstract(x, ["x"]) == App(App(S, K), K)
    assert abstract(Const("c"), ["x"]) == App(K, Const("c"))


def test_abstract_application_matches_direct_evaluation():
    rng = random.Random(3)
    pool = element_pool(ATOMS)
    e = App(Const("f"), Var("x"))
    term = abstract(e, ["x"])
    for _ in range(20):
        f = random_function(rng, pool)
        arg = random_subset(rng, pool, 0, 4)
        env = {"f": f}
        assert kernel.apply(eval_term(term, env, atoms=ATOMS), arg) == kernel.apply(f, arg)


def test_abstract_rejects_connectives_and_unlisted_variables():
    with pytest.raises(NotApplicative):
        abstract(parse_expr("p x & q x", ("x",)), ["x"])
    with pytest.raises(NotApplicative):
        abstract(parse_expr("f x y", ("x", "y")), ["x"])


def test_comprehend_identity():
    m = comprehend(Var("x"), ["x"], {})
    assert kernel.apply(m, frozenset([a, b])) == {a, b}


def test_comprehend_child_of():
    e = parse_expr("mother y x", ("x", "y"))
    m = comprehend(e, ["x", "y"], {"mother": MOTHER})
    for x, y in itertools.product(PEOPLE, repeat=2):
        xs, ys = frozenset([x]), frozenset([y])
        assert kernel.apply_chain(m, [xs, ys]) == kernel.apply(kernel.apply(MOTHER, ys), xs)
    aristotle, phaestis = frozenset([Atom("Aristotle")]), frozenset([Atom("Phastia")])
    assert kernel.apply_chain(m, [aristotle, phaestis]) == {Atom("Aristotle")}


def test_comprehend_conjunction_is_intersection():
    p, q = class_set([a, b]), class_set([b, c])
    m = comprehend(parse_expr("p x & q x", ("x",)), ["x"], {"p": p, "q": q})
    for arg in (frozenset([a, b, c]), frozenset([b]), frozenset([a])):
        assert kernel.apply(m, arg) == kernel.apply(p, arg) & kernel.apply(q, arg)


def test_comprehend_errors():
    with pytest.raises(NonMonotone):
        comprehend(parse_expr("!p x", ("x",)), ["x"], {"p": frozenset()})
    with pytest.raises(OrganonError):
        comprehend(parse_expr("f x y", ("x", "y")), ["x"], {"f": frozenset()})
    with pytest.raises(UnboundName):
        kernel.apply(comprehend(parse_expr("f x", ("x",)), ["x"], {}), frozenset())


def test_comprehension_membership_unfolds_arguments():
    m = comprehend(Var("x"), ["x"], {})
    assert m.member(Arrow([a], a))
    assert not m.member(Arrow([a], b))
    assert not m.member(a)


def test_materialize_examples():
    ident = comprehend(Var("x"), ["x"], {})
    assert materialize(ident, [frozenset([a])]) == {Arrow([a], a)}
    assert materialize(ident, [frozenset()]) == frozenset()
    const = comprehend(Const("c"), ["x"], {"c": frozenset([b])})
    assert materialize(const, [frozenset([a])]) == {Arrow([a], b)}


def test_materialize_reproduces_result_on_same_arguments():
    e = parse_expr("mother y x", ("x", "y"))
    m = comprehend(e, ["x", "y"], {"mother": MOTHER})
    args = [frozenset(PEOPLE), frozenset([Atom("Phastia")])]
    f = materialize(m, args)
    assert kernel.apply_chain(f, args) == kernel.apply_chain(m, args)


@settings(max_examples=50)
@given(st.integers(0, 10_000))
def test_materialize_soundness(seed):
    rng = random.Random(seed)
    pool = element_pool(ATOMS)
    vars = ["x", "y"][:rng.randint(1, 2)]
    e = random_applicative(rng, vars, ["f", "c"], depth=3)
    env = {n: random_function(rng, pool) | random_subset(rng, pool, 1) for n in ("f", "c")}
    m = comprehend(e, vars, env)
    args = [random_subset(rng, pool, 0, 3) for _ in vars]
    bigger = [x | random_subset(rng, pool, 0, 2) for x in args]
    f = materialize(m, args)
    assert kernel.apply_chain(f, bigger) >= kernel.apply_chain(m, args)


def test_separate_moves_slot_to_end():
    e = parse_expr("mother x y", ("x", "y"))
    assert separate(e, 2, ["x", "y"]) == (e, ("x", "y"))
    assert separate(Var("x"), 1, ["x"]) == (Var("x"), ("x",))
    phi, order = separate(e, 1, ["x", "y"])
    assert order == ("y", "x")
    env = {"mother": MOTHER}
    sep = comprehend(phi, order, env)
    for x, y in itertools.product(PEOPLE, repeat=2):
        xs, ys = frozenset([x]), frozenset([y])
        assert kernel.apply_chain(sep, [ys, xs]) == kernel.apply(kernel.apply(MOTHER, xs), ys)
    with pytest.raises(IndexError):
        separate(e, 3, ["x", "y"])


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_comprehension_and_abstraction_agree_with_oracle(seed):
    rng = random.Random(seed)
    pool = element_pool(ATOMS)
    vars = ["x", "y", "z"][:rng.randint(1, 3)]
    e = random_applicative(rng, vars, ["f", "g"], depth=4)
    env = {n: random_function(rng, pool) | random_subset(rng, pool, 1) for n in ("f", "g")}
    args = [random_subset(rng, pool, 0, 4) for _ in vars]
    expected = oracle.direct_eval(e, env, dict(zip(vars, args)))
    assert kernel.apply_chain(comprehend(e, vars, env), args) == expected
    term = abstract(e, vars)
    assert kernel.apply_chain(eval_term(term, env, atoms=ATOMS), args) == expected
