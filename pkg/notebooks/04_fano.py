# ---
# jupyter:
#   jupytext:
#     formats: py:percent
#     text_representation:
#       extension: .py
#       format_name: percent
#       format_version: '1.3'
# ---

# %% [markdown]
# # The Fano plane
#
# Seven points, seven lines, three points on every line.  Any two distinct
# points lie on exactly one common line.

# %%
import dataclasses

from organon import cli, oracle
from organon.factual import Truth
from organon.lang import RelDecl, Script, elaborate, parse_expr, parse_script
from organon.relational import LambdaEnv, eval_lambda, formula_truth

text = cli.dataset_text("fano.org")
session = elaborate(parse_script(text))
axiom = session.queries[0].expr
ctx = LambdaEnv(session.env, session.valuation())
f = eval_lambda(axiom, ctx)
print(formula_truth(f))
print(f)

# %% [markdown]
# The result is a formula over valued facts.  The classical model checker
# gives the same verdict.

# %%
structure = session.structure()
print(oracle.fo_eval(oracle.from_expr(axiom), structure, cap=cli.ORACLE_CAP))

# %% [markdown]
# ## Deleting one incidence
#
# Removing any incidence pair breaks the axiom.  The engine's verdict is
# compared with the model checker for all 21 pairs.

# %%
def without(script, pair):
    out = []
    for s in script.statements:
        if isinstance(s, RelDecl) and s.name == "Inc":
            s = dataclasses.replace(s, tuples=tuple(t for t in s.tuples if t != pair))
        out.append(s)
    return Script(tuple(out))


script = parse_script(text)
verdicts = {}
for pair in sorted(session.env.relation_names("Inc")):
    broken = elaborate(without(script, pair))
    v = formula_truth(eval_lambda(axiom, LambdaEnv(broken.env, broken.valuation())))
    classical = oracle.fo_eval(oracle.from_expr(axiom), broken.structure(), cap=cli.ORACLE_CAP)
    verdicts[pair] = (str(v), classical)
print(set(verdicts.values()))

# %% [markdown]
# ## Indeterminacy
#
# A fact outside a relation's fact domain makes the whole formula
# indeterminate.  Lines never occur in the point slot of `Inc`.

# %%
for q in ["Inc p1 l1", "Inc p1 l2", "Inc l1 l1", "Inc p1 l2 | Inc l1 l1"]:
    print(f"{q:24} {formula_truth(eval_lambda(parse_expr(q), ctx))}")
assert formula_truth(eval_lambda(parse_expr("Inc l1 l1"), ctx)) is Truth.INDET
