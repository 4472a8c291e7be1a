"""The ``.org`` script language: tokenizer, parser, printer and elaboration.

A script is a sequence of newline-terminated statements.  A statement may
run over several lines while parentheses or braces are open or when a line
ends in a comma or an operator; ``#`` starts a comment.  Declarations build
an environment and queries are evaluated against it in order.  The grammar is given in ``docs/grammar.ebnf``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from . import factual, relational
from .encode import class_set
from .errors import ElaborationError, OrganonError, ParseError
from .expr import (Alpha, And, App, Comb, Const, Eps, Not, Or, Rec, SetLit, Var,
                   constants, spine, to_text)
from .factual import Env
from .kernel import DEFAULT_BOUNDS, Atom, Bounds, Intensional, print_element, sort_key
from .oracle import Structure

KEYWORDS = {"eps", "exists", "all", "forall", "rec", "seed", "ext", "atoms", "rel",
            "def", "valuation", "eval", "truth", "check", "extension", "categorical"}
FORMS = ("all", "no", "some", "some-not")
QUERY_KINDS = ("eval", "truth", "check", "extension", "categorical")


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int
    length: int = 1


@dataclass(frozen=True)
class Token:
    kind: str  # "name", "punct", "nl", "eof"
    text: str
    span: SourceSpan


_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<comment>\#[^\n]*)
  | (?P<nl>\n)
  | (?P<name>[A-Za-z0-9_][A-Za-z0-9_']*(?:-[A-Za-z0-9_']+)*)
  | (?P<punct>:=|[(){},.:=/|&!+-])
""", re.VERBOSE)


# a line ending in one of these continues on the next
_CONTINUE = {",", "=", ":=", "|", "&", "!", "."}


def tokenize(text: str) -> List[Token]:
    tokens, line, start, pos, depth = [], 1, 0, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - start + 1)
        kind, s = m.lastgroup, m.group()
        span = SourceSpan(line, pos - start + 1, len(s))
        if kind == "nl":
            if depth == 0 and not (tokens and tokens[-1].text in _CONTINUE):
                tokens.append(Token("nl", s, span))
            line, start = line + 1, m.end()
        elif kind in ("name", "punct"):
            if s in "({":
                depth += 1
            elif s in ")}":
                depth = max(0, depth - 1)
            tokens.append(Token(kind, s, span))
        pos = m.end()
    eof = SourceSpan(line, pos - start + 1, 0)
    tokens.append(Token("nl", "", eof))
    tokens.append(Token("eof", "", eof))
    return tokens


# -- statements --------------------------------------------------------------

@dataclass(frozen=True)
class AtomsDecl:
    names: Tuple[str, ...]
    span: SourceSpan = field(default=None, compare=False)


@dataclass(frozen=True)
class RelDecl:
    name: str
    arity: int
    tuples: Tuple[Tuple[str, ...], ...]
    span: SourceSpan = field(default=None, compare=False)


@dataclass(frozen=True)
class DefDecl:
    name: str
    params: Tuple[str, ...]
    body: object
    span: SourceSpan = field(default=None, compare=False)

    @property
    def form(self) -> str:
        if isinstance(self.body, Rec):
            return "rec"
        if _has_eps(self.body):
            return "eps"
        return "explicit"


def _has_eps(e) -> bool:
    if isinstance(e, Eps):
        return True
    if isinstance(e, App):
        return _has_eps(e.fn) or _has_eps(e.arg)
    if isinstance(e, (And, Or)):
        return _has_eps(e.left) or _has_eps(e.right)
    if isinstance(e, (Not, Alpha, Rec)):
        return _has_eps(e.body)
    return False


@dataclass(frozen=True)
class ValuationDecl:
    name: str
    overrides: Tuple[Tuple[Tuple[str, ...], bool], ...] = ()
    span: SourceSpan = field(default=None, compare=False)


@dataclass(frozen=True)
class Query:
    kind: str
    expr: object = None
    name: str = None
    form: str = None
    args: Tuple[str, ...] = ()
    span: SourceSpan = field(default=None, compare=False)


@dataclass(frozen=True)
class Script:
    statements: Tuple[object, ...] = ()

    @property
    def queries(self):
        return [s for s in self.statements if isinstance(s, Query)]


class _Parser:
    def __init__(self, text):
        self.toks = tokenize(text)
        self.i = 0

    # token helpers
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        return ParseError(msg, tok.span.line, tok.span.column, max(tok.span.length, 1))

    def at(self, text):
        return self.tok.kind in ("name", "punct") and self.tok.text == text

    def take(self):
        t = self.tok
        self.i += 1
        return t

    def expect(self, text):
        if not self.at(text):
            shown = self.tok.text or "end of statement"
            raise self.error(f"expected {text!r}, found {shown!r}")
        return self.take()

    def name(self, what="name"):
        t = self.tok
        if t.kind != "name" or t.text in KEYWORDS:
            shown = t.text or "end of statement"
            raise self.error(f"expected {what}, found {shown!r}")
        self.i += 1
        return t.text

    def end_statement(self):
        if self.tok.kind != "nl":
            raise self.error(f"unexpected {self.tok.text!r}")
        self.i += 1

    # statements
    def script(self) -> Script:
        out = []
        while self.tok.kind != "eof":
            if self.tok.kind == "nl":
                self.i += 1
                continue
            out.append(self.statement())
            self.end_statement()
        return Script(tuple(out))

    def statement(self):
        t = self.tok
        if t.kind != "name":
            raise self.error(f"expected a statement, found {t.text!r}")
        kw = t.text
        self.i += 1
        if kw == "atoms":
            names = []
            while self.tok.kind == "name":
                names.append(self.name("atom name"))
            return AtomsDecl(tuple(names), t.span)
        if kw == "rel":
            name = self.name("relation name")
            self.expect("/")
            ar = self.take()
            if not ar.text.isdigit() or int(ar.text) < 1:
                raise self.error("arity must be a positive integer", ar)
            arity = int(ar.text)
            self.expect("=")
            return RelDecl(name, arity, self.tuples(arity), t.span)
        if kw == "def":
            name = self.name("definition name")
            params = []
            while self.tok.kind == "name" and not self.at(":="):
                params.append(self.name("parameter"))
            self.expect(":=")
            return DefDecl(name, tuple(params), self.expr(set(params)), t.span)
        if kw == "valuation":
            name = self.name("relation name")
            if self.at("closed"):
                self.take()
                return ValuationDecl(name, (), t.span)
            overrides = []
            while True:
                tup = self.tuple_()
                pol = self.take()
                if pol.text not in ("+", "-"):
                    raise self.error("expected polarity + or -", pol)
                overrides.append((tup, pol.text == "+"))
                if not self.at(","):
                    break
                self.take()
            return ValuationDecl(name, tuple(overrides), t.span)
        if kw in ("eval", "check", "truth"):
            return Query(kw, expr=self.expr(set()), span=t.span)
        if kw == "extension":
            return Query(kw, name=self.name("relation name"), span=t.span)
        if kw == "categorical":
            form = self.take()
            if form.text not in FORMS:
                raise self.error(f"categorical form must be one of {', '.join(FORMS)}", form)
            p, q = self.name("class name"), self.name("class name")
            return Query(kw, form=form.text, args=(p, q), span=t.span)
        raise self.error(f"unknown statement {kw!r}", t)

    def tuple_(self):
        if self.at("("):
            self.take()
            items = [self.name("atom name")]
            while self.at(","):
                self.take()
                items.append(self.name("atom name"))
            self.expect(")")
            return tuple(items)
        return (self.name("atom name"),)

    def tuples(self, arity):
        out = []
        if self.tok.kind in ("nl", "eof"):
            return ()
        if self.at("{"):
            self.take()
            self.expect("}")
            return ()
        while True:
            start = self.tok
            t = self.tuple_()
            if len(t) != arity:
                raise self.error(f"tuple has {len(t)} components, relation arity is {arity}", start)
            out.append(t)
            if not self.at(","):
                return tuple(out)
            self.take()

    # expressions
    def expr(self, scope):
        if self.tok.kind == "name" and self.tok.text in ("eps", "exists", "all", "forall", "rec"):
            return self.binder(scope)
        left = self.conj(scope)
        while self.at("|"):
            self.take()
            left = Or(left, self.conj(scope))
        return left

    def binder(self, scope):
        kw = self.take().text
        var = self.name("bound variable")
        sort = seed = None
        if kw != "rec" and self.at(":"):
            self.take()
            sort = self.name("sort name")
        if kw in ("eps", "exists", "rec") and self.at("seed"):
            self.take()
            if self.at("ext"):
                if kw == "rec":
                    raise self.error("rec seeds must be expressions")
                self.take()
                seed = "ext"
            else:
                seed = self.atom(scope)
        self.expect(".")
        body = self.expr(scope | {var})
        if kw in ("eps", "exists"):
            return Eps(var, body, seed, sort, kw)
        if kw == "rec":
            return Rec(var, body, seed)
        return Alpha(var, body, sort, kw)

    def conj(self, scope):
        left = self.neg(scope)
        while self.at("&"):
            self.take()
            left = And(left, self.neg(scope))
        return left

    def neg(self, scope):
        if self.at("!"):
            self.take()
            return Not(self.neg(scope))
        return self.application(scope)

    def _starts_atom(self):
        t = self.tok
        if t.kind == "name":
            return t.text not in KEYWORDS or t.text in ("eps", "exists", "all", "forall", "rec")
        return t.kind == "punct" and t.text in ("(", "{")

    def application(self, scope):
        e = self.atom(scope)
        while self._starts_atom():
            e = App(e, self.atom(scope))
        return e

    def atom(self, scope):
        t = self.tok
        if t.kind == "name" and t.text in ("eps", "exists", "all", "forall", "rec"):
            return self.binder(scope)
        if self.at("("):
            self.take()
            e = self.expr(scope)
            self.expect(")")
            return e
        if self.at("{"):
            self.take()
            names = []
            if not self.at("}"):
                names.append(self.name("atom name"))
                while self.at(","):
                    self.take()
                    names.append(self.name("atom name"))
            self.expect("}")
            return SetLit(tuple(names))
        name = self.name("expression")
        if name in scope:
            return Var(name)
        if name in ("S", "K"):
            return Comb(name)
        return Const(name)


def parse_script(text: str) -> Script:
    return _Parser(text).script()


def parse_expr(text: str, scope=()) -> object:
    p = _Parser(text)
    e = p.expr(set(scope))
    p.end_statement()
    if p.tok.kind != "eof":
        raise p.error(f"unexpected {p.tok.text!r}")
    return e


def _tuple_text(t):
    return t[0] if len(t) == 1 else "(" + ", ".join(t) + ")"


def statement_text(s) -> str:
    if isinstance(s, AtomsDecl):
        return "atoms " + " ".join(s.names)
    if isinstance(s, RelDecl):
        return f"rel {s.name}/{s.arity} = " + (", ".join(_tuple_text(t) for t in s.tuples) or "{}")
    if isinstance(s, DefDecl):
        return " ".join(["def", s.name, *s.params, ":=", to_text(s.body)])
    if isinstance(s, ValuationDecl):
        if not s.overrides:
            return f"valuation {s.name} closed"
        body = ", ".join(f"({', '.join(t)}) {'+' if v else '-'}" for t, v in s.overrides)
        return f"valuation {s.name} {body}"
    if isinstance(s, Query):
        if s.kind == "extension":
            return f"extension {s.name}"
        if s.kind == "categorical":
            return f"categorical {s.form} {s.args[0]} {s.args[1]}"
        return f"{s.kind} {to_text(s.expr)}"
    raise TypeError(f"not a statement: {s!r}")


def print_script(script: Script) -> str:
    return "".join(statement_text(s) + "\n" for s in script.statements)


# -- elaboration ---------------------------------------------------------------

def _where(span) -> str:
    return f"{span.line}:{span.column}: " if span else ""


@dataclass
class Session:
    """Environment built from declarations, plus the queries seen so far."""

    env: Env
    queries: List[Query] = field(default_factory=list)
    valuation_overrides: Dict[str, Dict[tuple, bool]] = field(default_factory=dict)
    definitions: Dict[str, DefDecl] = field(default_factory=dict)
    declared: set = field(default_factory=set)

    def _declare(self, name, span):
        if name in self.declared:
            raise ElaborationError(f"{_where(span)}{name} is already declared")
        self.declared.add(name)

    def _check_scope(self, names, span):
        for c in sorted(names):
            if c not in self.declared:
                raise ElaborationError(f"{_where(span)}unbound name {c}")

    def add(self, s):
        """Elaborate one statement into the environment."""
        env = self.env
        if isinstance(s, AtomsDecl):
            for n in s.names:
                self._declare(n, s.span)
            env.add_atoms(s.names)
        elif isinstance(s, RelDecl):
            for t in s.tuples:
                for a in t:
                    if a not in self.declared or a in env.arities:
                        raise ElaborationError(f"{_where(s.span)}{a} is not an atom")
            self._declare(s.name, s.span)
            env.add_relation(s.name, s.arity, s.tuples)
        elif isinstance(s, DefDecl):
            self._check_scope(constants(s.body), s.span)
            self._declare(s.name, s.span)
            factual.define(s.name, s.params, s.body, env)
            self.definitions[s.name] = s
        elif isinstance(s, ValuationDecl):
            if s.name not in env.arities:
                raise ElaborationError(f"{_where(s.span)}unbound name {s.name}")
            over = self.valuation_overrides.setdefault(s.name, {})
            for t, v in s.overrides:
                over[tuple(Atom(a) for a in t)] = v
        elif isinstance(s, Query):
            names = set(s.args) | ({s.name} if s.name else set())
            if s.expr is not None:
                names |= constants(s.expr)
            self._check_scope(names, s.span)
            self.queries.append(s)
        else:
            raise TypeError(f"not a statement: {s!r}")

    def valuation(self) -> relational.Valuation:
        return relational.closed_world(self.env, overrides=self.valuation_overrides)

    def fact_domains(self) -> Dict[str, frozenset]:
        """Fact domains as tuples of atom names, keyed by relation."""
        return {n: frozenset(tuple(a.name for a in t) for t in relational.fact_domain(self.env, n))
                for n in self.env.arities}

    def structure(self) -> Structure:
        """The relations (data and defined) as a plain structure for the oracle."""
        rels = {n: (self.env.arities[n], self.env.relation_names(n)) for n in self.env.relations}
        return Structure(frozenset(a.name for a in self.env.carrier), rels)


def elaborate(script: Script, bounds: Bounds = DEFAULT_BOUNDS, seeds=None) -> Session:
    """Build the environment.  ``seeds`` maps bound variable names to seeds
    that take precedence over those written in the script."""
    session = Session(Env(bounds=bounds, seed_overrides=dict(seeds or {})))
    for s in script.statements:
        session.add(s)
    return session


def load_structure_json(doc) -> Script:
    """Script equivalent of a JSON structure document."""
    if isinstance(doc, str):
        doc = json.loads(doc)
    unknown = set(doc) - {"atoms", "relations", "constants"}
    if unknown:
        raise ParseError(f"unknown fields {sorted(unknown)}", 1, 1)
    stmts = [AtomsDecl(tuple(doc.get("atoms", [])), SourceSpan(1, 1))]
    for name, spec in doc.get("relations", {}).items():
        tuples = tuple(tuple(t) for t in spec["tuples"])
        stmts.append(RelDecl(name, int(spec["arity"]), tuples, SourceSpan(1, 1)))
    for name, atom in doc.get("constants", {}).items():
        stmts.append(RelDecl(name, 1, ((atom,),), SourceSpan(1, 1)))
    return Script(tuple(stmts))


def load(text: str) -> Script:
    """Parse script text, or a JSON structure document if it starts with ``{``."""
    if text.lstrip().startswith("{"):
        try:
            return load_structure_json(text)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    return parse_script(text)


# -- queries -----------------------------------------------------------------

def run_query(q: Query, session: Session) -> dict:
    """Evaluate one query; returns a JSON-ready result record."""
    env = session.env
    if q.kind == "eval":
        value = factual.evaluate(q.expr, env, {})
        return {"result": _set_text(value)}
    if q.kind == "truth":
        head, args = _split_predication(q.expr)
        params = tuple(f"_{i}" for i in range(len(args)))
        body = head
        for p in params:
            body = App(body, Var(p))
        pred = factual.Predication(body, params, env)
        values = [factual.evaluate(a, env, {}) for a in args]
        return {"result": str(factual.truth(pred, values))}
    if q.kind == "check":
        ctx = relational.LambdaEnv(env, session.valuation())
        formula = relational.eval_lambda(q.expr, ctx)
        return {"result": str(relational.formula_truth(formula)), "formula": str(formula)}
    if q.kind == "extension":
        if q.name not in env.relations:
            raise OrganonError(f"{q.name} is not a relation")
        return {"result": sorted(list(t) for t in env.relation_names(q.name))}
    if q.kind == "categorical":
        p, qq = (class_set(env.sort_range(n)) for n in q.args)
        return {"result": str(factual.categorical(q.form, p, qq, env))}
    raise OrganonError(f"unknown query kind {q.kind}")


def _split_predication(e):
    head, args = spine(e)
    if not args:
        raise OrganonError("truth needs a predication applied to arguments")
    return head, args


def _set_text(value) -> List[str]:
    if isinstance(value, Intensional):
        raise OrganonError("result is an infinite set")
    return [print_element(x) for x in sorted(value, key=sort_key)]


def query_source(q: Query) -> str:
    return statement_text(q)
