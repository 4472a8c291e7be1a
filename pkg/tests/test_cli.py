import io
import json
from pathlib import Path

import pytest

from organon import cli
from organon.cli import EXIT_DISAGREE, EXIT_EVAL, EXIT_OK, EXIT_PARSE, Repl, main


SCHEMA = Path(__file__).parents[1] / "docs" / "report.schema.json"


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def report(*argv):
    code, text = run(*argv, "--json")
    return code, json.loads(text)


def test_eval_fano_axiom_is_true():
    code, rep = report("eval", "fano.org")
    assert code == EXIT_OK
    first = rep["queries"][0]
    assert first["kind"] == "check" and first["result"] == "⊤"
    assert rep["command"] == "eval" and rep["bounds"] == "6,8,100000"


def test_eval_family_siblings_match_the_oracle():
    code, rep = report("compare", "aristotle_family.org")
    assert code == EXIT_OK
    sib = next(q for q in rep["queries"] if q["source"] == "extension sibling")
    assert sib["classification"] == "agree"


def test_compare_fano_agrees():
    code, rep = report("compare", "fano.org")
    assert code == EXIT_OK
    assert rep["queries"][0]["classification"] == "agree"
    assert {q["classification"] for q in rep["queries"]} <= {"agree", "△", "n/a"}


def test_compare_corrupted_fano(tmp_path):
    text = cli.dataset_text("fano.org").replace("(p1, l1), ", "", 1)
    path = tmp_path / "broken.org"
    path.write_text(text)
    code, rep = report("compare", str(path))
    assert code == EXIT_OK
    first = rep["queries"][0]
    assert first["result"] != "⊤" and first["oracle"] is False


def test_compare_empty_ext_is_classified_indeterminate(tmp_path):
    path = tmp_path / "empty.org"
    path.write_text("atoms a b\nrel R/1 = a\nrel none/1 = {}\ncheck R a\ncheck none a\n")
    code, rep = report("compare", str(path))
    assert code == EXIT_OK
    assert [q["classification"] for q in rep["queries"]] == ["agree", "△"]


def test_unexplained_disagreement_exits_3(monkeypatch):
    monkeypatch.setattr(cli, "classify",
                        lambda q, rec, session: {"oracle": None, "classification": "disagree"})
    code, _ = run("compare", "syllogisms.org")
    assert code == EXIT_DISAGREE


def test_empty_script(tmp_path):
    path = tmp_path / "empty.org"
    path.write_text("")
    code, rep = report("eval", str(path))
    assert code == EXIT_OK and rep["queries"] == []
    assert run("eval", str(path)) == (EXIT_OK, "")


def test_exit_codes(tmp_path):
    bad = tmp_path / "bad.org"
    bad.write_text("atoms a\neval (a\n")
    assert run("eval", str(bad))[0] == EXIT_PARSE
    assert run("eval", str(tmp_path / "missing.org"))[0] == EXIT_PARSE
    assert run("frobnicate")[0] == EXIT_PARSE
    assert run("eval", "--seed", "y={p1}", "fano.org")[0] == EXIT_EVAL
    assert run("eval", "--bounds", "6,8,3", "aristotle_family.org")[0] == EXIT_EVAL


def test_bounds_flag_and_environment(monkeypatch):
    monkeypatch.setenv("ORGANON_BOUNDS", "5,8,50000")
    assert report("eval", "syllogisms.org")[1]["bounds"] == "5,8,50000"
    assert report("eval", "--bounds", "4,8,1000", "syllogisms.org")[1]["bounds"] == "4,8,1000"


def test_json_reports_are_deterministic():
    def strip(rep):
        for q in rep["queries"]:
            q.pop("wall_time_s")
        return rep
    assert strip(report("eval", "aristotle_family.org")[1]) == \
        strip(report("eval", "aristotle_family.org")[1])


def test_human_output():
    code, text = run("compare", "fano.org")
    assert code == EXIT_OK
    assert text.startswith("[1] check forall x1 : point")
    assert "=> ⊤" in text and "[agree]" in text


def test_abstract():
    assert run("abstract", "x", "--vars", "x") == (EXIT_OK, "S K K\n")
    code, text = run("abstract", "mother y x", "--vars", "x,y", "--verify", "20")
    assert code == EXIT_OK and "verified on 20 random environments: ok" in text
    code, out = run("abstract", "c", "--vars", "x", "--json")
    assert json.loads(out)["term"] == "K c"
    assert run("abstract", "p x & q x", "--vars", "x")[0] == EXIT_PARSE
    assert run("abstract", "f (", "--vars", "x")[0] == EXIT_PARSE


def test_repl_meta_commands_and_errors():
    repl = Repl()
    assert repl.feed(":bounds") == "6,8,100000"
    assert repl.feed("atoms a b") == "ok"
    assert repl.feed("rel R/1 = a") == "ok"
    assert repl.feed(":env") == "atoms: a b\nR/1: 1 tuples"
    assert repl.feed("eval Q a").startswith("error:")
    assert repl.feed("check R a") == "⊤"
    assert repl.feed(":what").startswith("error:")
    assert repl.feed(":quit") == "bye" and repl.done


def test_repl_buffers_open_lines():
    repl = Repl()
    assert repl.feed("atoms a b") == "ok"
    assert repl.feed("rel R/2 = (a, b),") == "..."
    assert repl.feed("  (b, a)") == "ok"
    assert repl.feed("check exists x . (R x a") == "..."
    assert repl.feed(")") == "⊤"


def test_repl_matches_batch_mode():
    text = cli.dataset_text("aristotle_family.org")
    _, rep = report("eval", "aristotle_family.org")
    repl = Repl()
    replies = []
    for line in text.splitlines():
        reply = repl.feed(line)
        if reply not in ("ok", "...", ""):
            replies.append(reply)
    assert not any(r.startswith("error") for r in replies)
    batch = []
    for q in rep["queries"]:
        res = q["result"]
        if isinstance(res, list):
            res = " ".join("<" + ", ".join(t) + ">" if isinstance(t, list) else t for t in res)
        batch.append(str(res))
    assert replies == batch


def test_repl_child_definition():
    repl = Repl()
    for line in ("atoms m c", "rel mother/2 = (m, c)", "def child x y := mother y x"):
        assert repl.feed(line) == "ok"
    assert repl.feed("extension child") == "<c, m>"


def test_cmd_repl_reads_stdin():
    args = cli.build_parser().parse_args(["repl", "syllogisms.org"])
    out = io.StringIO()
    assert cli.cmd_repl(args, stdin=io.StringIO(":bounds\n:quit\n"), out=out) == EXIT_OK
    assert out.getvalue().splitlines()[-2:] == ["6,8,100000", "bye"]


@pytest.mark.parametrize("item", ["y", "=ext"])
def test_bad_seed_flags(item):
    assert run("eval", "--seed", item, "fano.org")[0] == EXIT_PARSE


@pytest.mark.parametrize("command", ["eval", "compare"])
@pytest.mark.parametrize("name", cli.DATASETS)
def test_reports_follow_the_schema(command, name):
    jsonschema = pytest.importorskip("jsonschema")
    schema = json.loads(SCHEMA.read_text())
    jsonschema.validate(report(command, name)[1], schema)


def test_empty_report_follows_the_schema(tmp_path):
    jsonschema = pytest.importorskip("jsonschema")
    schema = json.loads(SCHEMA.read_text())
    path = tmp_path / "q.org"
    path.write_text("atoms a\nrel R/1 = a\neval R {}\n")
    rep = report("eval", str(path))[1]
    assert rep["queries"][0]["result"] == []
    jsonschema.validate(rep, schema)
