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
# # Comprehension
#
# An expression built by application from variables and constants can be
# turned into one model set in two ways: syntactically, by bracket
# abstraction into S and K, or semantically, as the graph of the expression.

# %%
import random

from organon import kernel
from organon.cli import verify_abstraction
from organon.comprehension import abstract, comprehend, eval_term, materialize, separate
from organon.encode import relation_set
from organon.expr import to_text
from organon.kernel import Atom
from organon.lang import parse_expr

e = parse_expr("mother y x", ("x", "y"))
term = abstract(e, ["x", "y"])
print(to_text(term))

# %% [markdown]
# Both routes agree with a direct evaluation of the expression.

# %%
phastia, aristotle = Atom("Phastia"), Atom("Aristotle")
env = {"mother": relation_set([(phastia, aristotle)])}
args = [frozenset([aristotle]), frozenset([phastia])]
print("graph  :", kernel.apply_chain(comprehend(e, ["x", "y"], env), args))
print("S and K:", kernel.apply_chain(eval_term(term, env, atoms=[phastia, aristotle]), args))
print("failures on 20 random environments:",
      verify_abstraction(e, ["x", "y"], 20, random.Random(0)))

# %% [markdown]
# The graph is infinite, but its part for given finite arguments can be
# written out: one arrow per value, with the arguments as antecedents.

# %%
m = comprehend(e, ["x", "y"], env)
print(sorted(map(kernel.print_element, materialize(m, args))))

# %% [markdown]
# Separating a variable moves it to the last argument slot.

# %%
phi, order = separate(e, 1, ["x", "y"])
print(order, kernel.apply_chain(comprehend(phi, order, env), args[::-1]))
