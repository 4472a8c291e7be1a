import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from organon import cli
from organon.errors import ElaborationError, MissingValuation, ParseError
from organon.expr import Eps, Rec, SetLit, to_text
from organon.generators import random_formula
from organon.kernel import Arrow, Atom
from organon.lang import (DefDecl, Query, RelDecl, Script, elaborate, load, load_structure_json,
                          parse_expr, parse_script, print_script, run_query, tokenize)


def only(text):
    (s,) = parse_script(text).statements
    return s


def test_definition_forms():
    child = only("def child x y := mother y x")
    assert isinstance(child, DefDecl) and child.form == "explicit"
    assert child.params == ("x", "y")
    sib = only("def sibling y z := mother (eps x seed {} . mother x y) z")
    assert sib.form == "eps"
    eps = sib.body.fn.arg
    assert isinstance(eps, Eps) and eps.seed == SetLit(())
    mdesc = only("def mdesc x y := rec U . (male y & father x y) | (eps z . father z y & U x z)")
    assert mdesc.form == "rec" and isinstance(mdesc.body, Rec) and mdesc.body.var == "U"


def test_application_is_left_associative_and_binders_reach_far():
    e = parse_expr("f a b")
    assert to_text(e) == "f a b"
    assert to_text(parse_expr("f (a b)")) == "f (a b)"
    e = parse_expr("exists x : line . P x & Q x")
    assert e.sort == "line" and to_text(e.body) == "P x & Q x"


def test_continuation_lines():
    script = parse_script("rel R/2 = (a, b),\n          (b, c)\ncheck exists x . R x b &\n  R b c\n")
    rel, q = script.statements
    assert rel.tuples == (("a", "b"), ("b", "c"))
    assert q.kind == "check"


@pytest.mark.parametrize("text, line, column", [
    ("atoms a\nrel R/2 = (a)\n", 2, 11),
    ("def f x := (g x\n", 2, 1),
    ("eval f $\n", 1, 8),
    ("rel R/0 = \n", 1, 7),
    ("categorical most P Q\n", 1, 13),
])
def test_syntax_errors_carry_positions(text, line, column):
    with pytest.raises(ParseError) as info:
        parse_script(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_tokens_have_spans():
    toks = [t for t in tokenize("def f x := g x\n") if t.kind != "nl"]
    assert toks[3].text == ":=" and toks[3].span.column == 9


def test_duplicate_and_unbound_names():
    with pytest.raises(ElaborationError):
        elaborate(parse_script("atoms a b a"))
    with pytest.raises(ElaborationError):
        elaborate(parse_script("atoms a\nrel R/1 = a\nrel R/1 = a"))
    with pytest.raises(ElaborationError):
        elaborate(parse_script("atoms a\ndef P x := Q x"))
    with pytest.raises(ElaborationError):
        elaborate(parse_script("atoms a\nrel R/1 = b"))
    with pytest.raises(ElaborationError):
        elaborate(parse_script("atoms a\neval R a"))


def test_checks_need_relation_constants():
    s = elaborate(parse_script("atoms a\nrel R/1 = a\ndef P x := R x\ncheck exists x . P x\ncheck a a"))
    assert run_query(s.queries[0], s)["result"] == "⊤"
    with pytest.raises(MissingValuation):
        run_query(s.queries[1], s)


@pytest.mark.parametrize("name", cli.DATASETS)
def test_round_trip_bundled(name):
    script = parse_script(cli.dataset_text(name))
    again = parse_script(print_script(script))
    assert again == script
    assert print_script(again) == print_script(script)


def test_empty_relation_round_trips():
    script = parse_script("atoms a\nrel none/1 = {}\nrel R/1 = a\n")
    assert print_script(script) == "atoms a\nrel none/1 = {}\nrel R/1 = a\n"
    assert parse_script(print_script(script)) == script


@settings(max_examples=60)
@given(st.integers(0, 10_000))
def test_round_trip_generated_queries(seed):
    rng = random.Random(seed)
    text = "".join(f"check {to_text(random_formula(rng))}\n" for _ in range(3))
    script = parse_script(text)
    assert parse_script(print_script(script)) == script


def test_family_elaboration():
    s = elaborate(parse_script(cli.dataset_text("aristotle_family.org")))
    father = s.env.values["father"]
    n1, ar = Atom("Niarchus1"), Atom("Aristotle")
    assert Arrow([n1], Arrow([ar], ar)) in father
    assert ("Niarchus1", "Aristotle") in s.env.relation_names("father")
    assert {"child", "sibling", "mdesc"} <= set(s.definitions)


def test_fano_elaboration():
    s = elaborate(parse_script(cli.dataset_text("fano.org")))
    assert len(s.env.values["Inc"]) == 21
    assert len(s.env.carrier) == 14


def test_empty_script():
    s = elaborate(parse_script(""))
    assert s.env.carrier == frozenset() and s.env.values == {} and s.queries == []
    assert parse_script("# only a comment\n\n") == Script(())


def test_elaboration_is_deterministic():
    text = cli.dataset_text("aristotle_family.org")
    one, two = elaborate(parse_script(text)), elaborate(parse_script(text))
    assert one.env.values == two.env.values
    assert one.env.relations == two.env.relations
    assert [run_query(q, one) for q in one.queries] == [run_query(q, two) for q in two.queries]


def test_json_structure_documents():
    doc = {"atoms": ["a", "b"], "relations": {"R": {"arity": 2, "tuples": [["a", "b"]]}},
           "constants": {"c": "a"}}
    script = load(json.dumps(doc))
    assert script == load_structure_json(doc)
    s = elaborate(script)
    assert s.env.relation_names("R") == {("a", "b")}
    assert any(isinstance(x, RelDecl) and x.name == "R" for x in script.statements)
    with pytest.raises(ParseError):
        load_structure_json({"atoms": [], "extra": 1})
    with pytest.raises(ParseError):
        load('{"atoms": [')


def test_queries_parse_with_their_kinds():
    text = "eval P a\ntruth P a\ncheck P a\nextension P\ncategorical some-not P Q\n"
    kinds = [q.kind for q in parse_script(text).statements]
    assert kinds == ["eval", "truth", "check", "extension", "categorical"]
    cat = parse_script(text).statements[-1]
    assert isinstance(cat, Query) and cat.form == "some-not" and cat.args == ("P", "Q")


def test_valuation_overrides():
    text = "atoms a b\nrel R/1 = a, b\nvaluation R (a) -, (b) +\ncheck R a\ncheck R b\n"
    s = elaborate(parse_script(text))
    assert [run_query(q, s)["result"] for q in s.queries] == ["⊥", "⊤"]


def test_seed_overrides_replace_script_seeds():
    text = cli.dataset_text("fano.org")
    s = elaborate(parse_script(text), seeds={"y": parse_expr("{l1}")})
    q = next(q for q in s.queries if q.kind == "eval")
    assert run_query(q, s)["result"] == ["l1"]
