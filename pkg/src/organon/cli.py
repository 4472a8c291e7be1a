"""Command-line entry point: ``organon eval|compare|repl|abstract``.

Exit codes: 0 success, 1 parse or usage error, 2 evaluation error, 3 a
disagreement with the oracle that the indeterminacy rule does not explain.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from importlib import resources
from pathlib import Path
from typing import List, Optional

from . import comprehension, oracle
from .errors import ElaborationError, NotApplicative, OrganonError, ParseError
from .expr import constants, to_text
from .generators import random_modelset
from .kernel import DEFAULT_BOUNDS, Atom, Bounds, apply_chain
from .lang import (Query, Session, elaborate, load, parse_expr, parse_script, query_source,
                   run_query)
from .factual import Env

EXIT_OK, EXIT_PARSE, EXIT_EVAL, EXIT_DISAGREE = 0, 1, 2, 3
DATASETS = ("fano.org", "aristotle_family.org", "syllogisms.org")
ORACLE_CAP = 16  # the bundled Fano plane has 14 atoms
GENEALOGY = ("child", "sibling", "mdesc")


def dataset_text(name: str) -> str:
    return resources.files("organon.datasets").joinpath(name).read_text(encoding="utf-8")


def read_source(path: str) -> str:
    """Script text from a path, falling back to a bundled dataset name."""
    p = Path(path)
    if p.exists():
        return p.read_text(encoding="utf-8")
    if p.name in DATASETS and str(p) == p.name:
        return dataset_text(p.name)
    raise FileNotFoundError(path)


def resolve_bounds(flag: Optional[str]) -> Bounds:
    text = flag or os.environ.get("ORGANON_BOUNDS")
    return Bounds.parse(text) if text else DEFAULT_BOUNDS


def parse_seeds(items: List[str]) -> dict:
    """``NAME=EXPR`` pairs; ``ext`` selects the ext seed, ``{}`` the empty one."""
    seeds = {}
    for item in items or []:
        name, sep, text = item.partition("=")
        if not sep or not name.strip():
            raise ParseError(f"--seed expects NAME=EXPR, got {item!r}")
        text = text.strip()
        seeds[name.strip()] = "ext" if text == "ext" else parse_expr(text)
    return seeds


# -- running scripts -----------------------------------------------------------

def _record(i, q: Query, session: Session, bounds: Bounds) -> dict:
    log = session.env.log
    before = len(log.records)
    start = time.perf_counter()
    out = run_query(q, session)
    new = log.records[before:]
    rec = {"index": i, "kind": q.kind, "source": query_source(q)}
    rec.update(out)
    rec["fixpoints"] = len(new)
    rec["iterations"] = sum(r.iterations for r in new)
    rec["bounds"] = str(bounds)
    rec["wall_time_s"] = round(time.perf_counter() - start, 6)
    return rec


def classify(q: Query, rec: dict, session: Session) -> dict:
    """Oracle verdict for a query and how it relates to the engine's."""
    if q.kind == "check":
        try:
            f = oracle.from_expr(q.expr)
        except OrganonError:
            return {"oracle": None, "classification": "n/a"}
        s = session.structure()
        truth = oracle.fo_eval(f, s, cap=ORACLE_CAP)
        engine = rec["result"]
        if engine == "△":
            explained = oracle.leaves_domain(f, s, session.fact_domains())
            return {"oracle": truth, "classification": "△" if explained else "disagree"}
        agree = (engine == "⊤") == truth
        return {"oracle": truth, "classification": "agree" if agree else "disagree"}
    if q.kind == "categorical":
        x, y = (frozenset(session.env.sort_range(n)) for n in q.args)
        truth = oracle.class_verdict(q.form, x, y)
        engine = rec["result"]
        if (engine == "⊤") == truth:
            return {"oracle": truth, "classification": "agree"}
        # the universal forms presuppose a nonempty subject (resp. predicate) class
        empty = (q.form == "all" and not x) or (q.form == "no" and not y)
        return {"oracle": truth, "classification": "△" if engine == "△" and empty else "disagree"}
    if q.kind == "extension" and q.name in GENEALOGY:
        s = session.structure()
        if all(r in s.relations for r in ("mother", "father", "male")):
            expected = sorted(list(t) for t in oracle.genealogy_oracle(q.name, s))
            same = expected == rec["result"]
            return {"oracle": expected, "classification": "agree" if same else "disagree"}
    return {"oracle": None, "classification": "n/a"}


def run_script(text: str, bounds: Bounds, seeds: dict, compare: bool = False) -> dict:
    session = elaborate(load(text), bounds, seeds)
    log = session.env.log
    report = {
        "bounds": str(bounds),
        "seeds": {k: (v if isinstance(v, str) else to_text(v)) for k, v in sorted(seeds.items())},
        "elaboration": {"fixpoints": len(log.records),
                        "iterations": sum(r.iterations for r in log.records)},
        "queries": [],
    }
    for i, q in enumerate(session.queries, 1):
        rec = _record(i, q, session, bounds)
        if compare:
            rec.update(classify(q, rec, session))
        report["queries"].append(rec)
    return report


def _human(report: dict) -> str:
    lines = []
    for r in report["queries"]:
        lines.append(f"[{r['index']}] {r['source']}")
        res = r["result"]
        if isinstance(res, list):
            res = "{" + ", ".join("<" + ", ".join(t) + ">" if isinstance(t, list) else t
                                  for t in res) + "}"
        lines.append(f"    => {res}")
        if "formula" in r:
            lines.append(f"    formula: {r['formula']}")
        if r.get("classification", "n/a") != "n/a":
            lines.append(f"    oracle: {r['oracle']}  [{r['classification']}]")
    return "\n".join(lines)


def _emit(report, as_json, out):
    if as_json:
        out.write(json.dumps(report, indent=2, ensure_ascii=False) + "\n")
    elif report["queries"]:
        out.write(_human(report) + "\n")


def cmd_eval(args, out=sys.stdout, compare=False) -> int:
    text = read_source(args.file)
    report = run_script(text, resolve_bounds(args.bounds), parse_seeds(args.seed), compare)
    report["script"] = args.file
    report["command"] = "compare" if compare else "eval"
    _emit(report, args.json, out)
    if compare and any(r.get("classification") == "disagree" for r in report["queries"]):
        return EXIT_DISAGREE
    return EXIT_OK


def cmd_compare(args, out=sys.stdout) -> int:
    return cmd_eval(args, out, compare=True)


# -- abstraction ---------------------------------------------------------------

def verify_abstraction(e, vars, n: int, rng: random.Random, bounds: Bounds = DEFAULT_BOUNDS):
    """Compare the S/K term with direct evaluation on ``n`` random environments.

    Returns the list of failing trial indices.
    """
    term = comprehension.abstract(e, vars)
    atoms = [Atom(a) for a in "abc"]
    failures = []
    for trial in range(n):
        env = {c: random_modelset(rng, atoms, 2, 4) for c in sorted(constants(e))}
        args = [random_modelset(rng, atoms, 2, 4) for _ in vars]
        expected = oracle.direct_eval(e, env, dict(zip(vars, args)), bounds)
        got = apply_chain(comprehension.eval_term(term, env, bounds, atoms), args, bounds)
        if got != expected:
            failures.append(trial)
    return failures


def cmd_abstract(args, out=sys.stdout) -> int:
    # names listed in --vars are variables even though the parser saw no binder
    vars = [v for v in (args.vars or "").split(",") if v]
    e = parse_expr(args.expr, scope=vars)
    term = comprehension.abstract(e, vars)
    result = {"expr": to_text(e), "vars": vars, "term": to_text(term)}
    code = EXIT_OK
    if args.verify:
        failures = verify_abstraction(e, vars, args.verify, random.Random(args.rng_seed),
                                      resolve_bounds(args.bounds))
        result["verify"] = {"trials": args.verify, "failures": failures}
        code = EXIT_EVAL if failures else EXIT_OK
    if args.json:
        out.write(json.dumps(result, indent=2) + "\n")
    else:
        out.write(result["term"] + "\n")
        if args.verify:
            out.write(f"verified on {args.verify} random environments: "
                      f"{'ok' if not failures else f'{len(failures)} failures'}\n")
    return code


# -- REPL ------------------------------------------------------------------

_OPENERS, _CLOSERS = "({", ")}"


class Repl:
    """Line-oriented session; ``feed`` returns the text to show for a line."""

    def __init__(self, bounds: Bounds = DEFAULT_BOUNDS, seeds=None):
        self.bounds = bounds
        self.session = Session(Env(bounds=bounds, seed_overrides=dict(seeds or {})))
        self.buffer = ""
        self.done = False

    def _incomplete(self, text):
        code = [line.split("#")[0].rstrip() for line in text.splitlines()]
        joined = "\n".join(code)
        depth = sum(joined.count(c) for c in _OPENERS) - sum(joined.count(c) for c in _CLOSERS)
        last = next((c for c in reversed(code) if c), "")
        return depth > 0 or last.endswith((",", "=", "|", "&", "!", "."))

    def feed(self, line: str) -> str:
        cmd = line.strip()
        if not self.buffer and cmd.startswith(":"):
            return self.meta(cmd)
        self.buffer += line + "\n"
        if self._incomplete(self.buffer):
            return "..."
        text, self.buffer = self.buffer, ""
        try:
            script = parse_script(text)
            out = []
            for s in script.statements:
                self.session.add(s)
                if isinstance(s, Query):
                    q = self.session.queries.pop()
                    rec = _record(0, q, self.session, self.bounds)
                    res = rec["result"]
                    if isinstance(res, list):
                        res = " ".join("<" + ", ".join(t) + ">" if isinstance(t, list) else t
                                       for t in res)
                    out.append(str(res))
                else:
                    out.append("ok")
            return "\n".join(out)
        except OrganonError as exc:
            return f"error: {exc}"

    def meta(self, cmd):
        if cmd == ":quit":
            self.done = True
            return "bye"
        if cmd == ":bounds":
            return str(self.bounds)
        if cmd == ":env":
            env = self.session.env
            atoms = " ".join(sorted(a.name for a in env.carrier))
            lines = [f"atoms: {atoms}"]
            for n in sorted(env.arities):
                lines.append(f"{n}/{env.arities[n]}: {len(env.relations[n])} tuples")
            return "\n".join(lines)
        return f"error: unknown command {cmd}"


def cmd_repl(args, stdin=sys.stdin, out=sys.stdout) -> int:
    repl = Repl(resolve_bounds(args.bounds), parse_seeds(args.seed))
    if args.file:
        out.write(repl.feed(read_source(args.file)) + "\n")
    interactive = stdin.isatty()
    while not repl.done:
        if interactive:
            out.write("organon> " if not repl.buffer else "... ")
            out.flush()
        line = stdin.readline()
        if not line:
            break
        reply = repl.feed(line.rstrip("\n"))
        if reply != "..." or interactive:
            out.write(reply + "\n")
    return EXIT_OK


# -- entry point -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the JSON report")
    common.add_argument("--bounds", metavar="L,S,C",
                        help="level bound, antecedent size bound, enumeration cap "
                             "(default from ORGANON_BOUNDS, else 6,8,100000)")
    common.add_argument("--seed", action="append", metavar="NAME=EXPR", default=[],
                        help="seed for the fixpoint binding NAME (ext, {} or an expression)")

    parser = argparse.ArgumentParser(prog="organon", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in (("eval", "run every query of a script"),
                        ("compare", "run a script and check verdicts against the oracle")):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("file", help="script (.org) or JSON structure; bundled names also work")
    p = sub.add_parser("repl", parents=[common], help="interactive session")
    p.add_argument("file", nargs="?", help="script to load first")
    p = sub.add_parser("abstract", parents=[common], help="bracket-abstract an applicative expression")
    p.add_argument("expr")
    p.add_argument("--vars", default="", help="comma-separated variables, outermost first")
    p.add_argument("--verify", type=int, default=0, metavar="N",
                   help="check against direct evaluation on N random environments")
    p.add_argument("--rng-seed", type=int, default=0)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    commands = {"eval": cmd_eval, "compare": cmd_compare, "repl": cmd_repl,
                "abstract": cmd_abstract}
    try:
        if args.command == "repl":
            return cmd_repl(args, out=out)
        return commands[args.command](args, out=out)
    except (ParseError, ElaborationError, NotApplicative, FileNotFoundError) as exc:
        print(f"organon: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OrganonError as exc:
        print(f"organon: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_EVAL


def main_exit():
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
