import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from organon import oracle
from organon.encode import class_set
from organon.errors import NoConvergence, NonMonotone, SeedInvalid
from organon.expr import Alpha, And, App, Const, Not, Or, Var
from organon.factual import (Env, Predication, Truth, alpha, categorical, eps, eval_factual,
                             evaluate, ext, kleene, neg_factual, truth, truth_of)
from organon.kernel import Atom, Bounds
from organon.lang import elaborate, parse_expr, parse_script

a, b, c, d = (Atom(n) for n in "abcd")

FAMILY = """
atoms Phastia Nicomachus Aristotle Arimnestus Arimneste
rel mother/2 = (Phastia, Aristotle), (Phastia, Arimnestus), (Phastia, Arimneste)
rel father/2 = (Nicomachus, Aristotle), (Nicomachus, Arimnestus), (Nicomachus, Arimneste)
def sibling y z := mother (eps x seed ext . mother x y) z
"""


def session(text):
    return elaborate(parse_script(text))


def class_env(**classes):
    env = Env()
    env.add_atoms("abcd")
    for name, members in classes.items():
        env.values[name] = class_set(members)
    return env


def unary(name, env):
    return Predication(App(Const(name), Var("x")), ("x",), env)


def family_pred(text, params):
    env = session(FAMILY).env
    return Predication(parse_expr(text, params), tuple(params), env)


def test_eval_factual_mother():
    p = family_pred("mother x y", ("x", "y"))
    assert eval_factual(p, [{Atom("Phastia")}, {Atom("Aristotle")}]) == {Atom("Aristotle")}
    assert eval_factual(p, [{Atom("Nicomachus")}, {Atom("Aristotle")}]) == frozenset()


def test_connective_identities():
    env = class_env(P=[a, b], E=[])
    phi = App(Const("P"), Var("x"))
    arg = {"x": frozenset([a, c])}
    assert evaluate(And(phi, phi), env, arg) == evaluate(phi, env, arg)
    assert evaluate(Or(phi, App(Const("E"), Var("x"))), env, arg) == evaluate(phi, env, arg)


@settings(max_examples=80)
@given(st.frozensets(st.sampled_from("abcd")), st.frozensets(st.sampled_from("abcd")),
       st.frozensets(st.sampled_from("abcd")))
def test_connective_laws(p, q, arg):
    env = class_env(P=[Atom(n) for n in p], Q=[Atom(n) for n in q])
    phi, psi = App(Const("P"), Var("x")), App(Const("Q"), Var("x"))
    bnd = {"x": frozenset(Atom(n) for n in arg)}
    left, right = evaluate(phi, env, bnd), evaluate(psi, env, bnd)
    assert evaluate(And(phi, psi), env, bnd) == left & right
    assert evaluate(Or(phi, psi), env, bnd) == left | right


def test_ext_examples():
    env = class_env(P=[a, c], E=[])
    assert ext(unary("P", env)) == {a, c}
    assert ext(unary("E", env)) == frozenset()
    p = family_pred("mother x y", ("x", "y"))
    people = {Atom(n) for n in ("Aristotle", "Arimnestus", "Arimneste")}
    assert ext(p, 1) == ext(p, 2) == people


def test_eps_examples():
    env = class_env(P=[a, b])
    p = unary("P", env)
    assert eps(p, 1, frozenset([a, b]), []) == {a, b}
    assert eps(p, 1, "ext", []) == {a, b}
    assert eps(p, 1, None, []) == frozenset()


def test_eps_rejects_seed_above_its_image():
    p = unary("P", class_env(P=[a, b]))
    with pytest.raises(SeedInvalid):
        eps(p, 1, frozenset([c]), [])


def test_eps_rejects_negated_slot():
    env = class_env(P=[a, b])
    p = Predication(Not(App(Const("P"), Var("x"))), ("x",), env)
    with pytest.raises(NonMonotone):
        eps(p, 1, None, [])


def test_sibling_pairs_share_a_mother():
    s = session(FAMILY)
    children = ("Aristotle", "Arimnestus", "Arimneste")
    assert s.env.relation_names("sibling") == set(itertools.product(children, repeat=2))


def test_kleene_logs_chain_and_detects_nonconvergence():
    env = Env()
    result = kleene(lambda x: x | {a} | ({b} if a in x else set()), frozenset(), log=env.log)
    assert result == {a, b}
    record = env.log.records[-1]
    assert record.verified and record.chain_monotone
    assert record.chain == (frozenset(), frozenset([a]), frozenset([a, b]))
    grow = lambda x: x | {Atom(f"n{len(x)}")}
    with pytest.raises(NoConvergence):
        kleene(grow, frozenset(), Bounds(6, 8, 20))


def test_alpha_examples():
    env = class_env(P=[a, b], E=[])
    assert alpha(unary("P", env), 1, []) == {a, b}
    assert alpha(unary("E", env), 1, []) == frozenset()


FUN = """
atoms p q1 q2 v w
rel eq/2 = (p, p), (q1, q1), (q2, q2), (v, v), (w, w)
rel const/3 = (p, q1, v), (p, q2, v)
rel varies/3 = (p, q1, v), (p, q2, w)
"""


@pytest.mark.parametrize("f, constant", [("const", True), ("varies", False)])
def test_point_function_test(f, constant):
    s = session(FUN)
    env = s.env
    qs = ["q1", "q2"]
    # pointwise: the values at q1 and q2, taken as epsilon referents, are equal
    value = "(eps r seed ext . {} p {} r)"
    pointwise = all(evaluate(parse_expr(f"eq {value.format(f, x)} {value.format(f, y)}"), env, {})
                    for x, y in itertools.product(qs, repeat=2))
    rel = env.relation_names(f)
    by_oracle = len({t[2] for t in rel if t[0] == "p"}) == 1
    assert pointwise == by_oracle == constant
    # the quantified form fills q with the ext of the values, so it cannot tell the two apart
    quantified = evaluate(parse_expr(f"eq (all q . {f} p q) (all q . {f} p q)"), env, {})
    assert quantified == frozenset()


def test_neg_factual_examples():
    env = class_env(P=[a, b])
    p = unary("P", env)
    assert neg_factual(p, [frozenset([a, b, c, d])]) == frozenset()
    assert neg_factual(p, [frozenset([c])]) == {a, b}
    assert neg_factual(p, [frozenset([a])]) == {b}


def test_double_negation_on_family():
    s = session(FAMILY)
    env = s.env
    people = sorted(env.carrier, key=str)
    body = parse_expr("mother x y", ("x", "y"))
    for x, y in itertools.product(people, repeat=2):
        bnd = {"x": frozenset([x]), "y": frozenset([y])}
        value = evaluate(body, env, bnd)
        assert evaluate(Not(Not(body)), env, bnd) == value


def test_truth_examples():
    env = class_env(P=[a, b], E=[])
    p = unary("P", env)
    assert truth(p, [frozenset([a, b])]) is Truth.TRUE
    assert truth(p, [frozenset([a])]) is Truth.FALSE
    assert truth(p, [frozenset([c])]) is Truth.INDET
    assert truth(unary("E", env), [frozenset([a])]) is Truth.INDET


def test_truth_rule_precedence():
    # ⊤ on one slot and a proper subset on another gives ⊥
    assert truth_of(frozenset([a]), [frozenset([a]), frozenset([a, b])]) is Truth.FALSE
    assert truth_of(frozenset([a]), [frozenset([a]), frozenset()]) is Truth.INDET
    assert truth_of(frozenset(), [frozenset([a])]) is Truth.INDET


@given(st.frozensets(st.sampled_from("abcd")),
       st.lists(st.frozensets(st.sampled_from("abcd")), min_size=1, max_size=3))
def test_truth_trichotomy(value, extents):
    v = frozenset(Atom(n) for n in value)
    verdict = truth_of(v, [frozenset(Atom(n) for n in e) for e in extents])
    assert verdict in (Truth.TRUE, Truth.FALSE, Truth.INDET)


def test_fano_axiom_is_true():
    from organon import cli
    from organon.lang import run_query
    s = session(cli.dataset_text("fano.org"))
    checks = [q for q in s.queries if q.kind == "check"]
    assert run_query(checks[0], s)["result"] == "⊤"


@pytest.mark.parametrize("form, x, y, expected", [
    ("all", "ab", "ab", Truth.TRUE),
    ("all", "ab", "abc", Truth.TRUE),
    ("all", "abc", "ab", Truth.FALSE),
    ("some", "ab", "cd", Truth.INDET),
    ("some", "ab", "bc", Truth.TRUE),
    ("no", "ab", "cd", Truth.TRUE),
    ("some-not", "a", "ab", Truth.INDET),
    ("some-not", "ab", "a", Truth.TRUE),
])
def test_categorical_examples(form, x, y, expected):
    env = class_env()
    xs, ys = [Atom(n) for n in x], [Atom(n) for n in y]
    verdict = categorical(form, class_set(xs), class_set(ys), env)
    assert verdict is expected
    assert (verdict is Truth.TRUE) == oracle.class_verdict(form, frozenset(xs), frozenset(ys))


def male_line(k):
    names = [f"m{i}" for i in range(k + 1)]
    edges = ", ".join(f"({x}, {y})" for x, y in zip(names, names[1:]))
    return f"""
atoms {" ".join(names)}
rel male/1 = {", ".join(names)}
rel father/2 = {edges}
def mdesc x y := rec U . (male y & father x y) | (eps z seed ext . father z y & U x z)
"""


@pytest.mark.parametrize("k", [1, 2, 3, 5])
def test_male_line_descendants(k):
    s = session(male_line(k))
    rel = s.env.relation_names("mdesc")
    assert len(rel) == k * (k + 1) // 2
    assert rel == {(f"m{i}", f"m{j}") for i in range(k + 1) for j in range(i + 1, k + 1)}
    assert any(r.kind == "rec" for r in s.env.log.records)


def test_recursion_ignoring_its_variable():
    s = session(male_line(2).replace("rec U . (male y & father x y) | (eps z seed ext . father z y & U x z)",
                                     "rec U . father x y"))
    assert s.env.relation_names("mdesc") == {("m0", "m1"), ("m1", "m2")}


def test_recursion_under_negation_is_rejected():
    text = male_line(2).replace("& U x z", "& !U x z")
    with pytest.raises(NonMonotone):
        session(text)


def test_alpha_at_set_level_uses_ext():
    env = class_env(P=[a, b])
    assert evaluate(Alpha("x", App(Const("P"), Var("x"))), env, {}) == {a, b}
