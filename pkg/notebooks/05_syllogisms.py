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
# # Categorical statements
#
# Classes are encoded as `{{x} -> x : x in X}`.  The four forms are built
# from the eps and all operators, negation and the three-valued truth rule.
# A ⊤ verdict should coincide with the class reading whenever both classes
# are nonempty.

# %%
import itertools

from organon import cli, oracle
from organon.encode import class_set
from organon.factual import Env, Truth, categorical
from organon.lang import elaborate, parse_script, run_query

session = elaborate(parse_script(cli.dataset_text("syllogisms.org")))
for q in session.queries:
    print(f"{cli.query_source(q):36} {run_query(q, session)['result']}")

# %% [markdown]
# ## Exhaustive check on four atoms

# %%
env = Env()
env.add_atoms("abcd")
atoms = sorted(env.carrier, key=str)
subsets = [frozenset(c) for r in range(len(atoms) + 1) for c in itertools.combinations(atoms, r)]
mismatch = 0
for form in ("all", "no", "some", "some-not"):
    for x, y in itertools.product(subsets, repeat=2):
        if not x or not y:
            continue
        top = categorical(form, class_set(x), class_set(y), env) is Truth.TRUE
        mismatch += top != oracle.class_verdict(form, x, y)
print("mismatches over nonempty class pairs:", mismatch)

# %% [markdown]
# With an empty subject class, `all` is indeterminate where the class reading
# calls it true: the encoding gives `all` existential import.  `no` stays
# true, as in the class reading.

# %%
empty, some = frozenset(), frozenset(atoms[:2])
for form in ("all", "no", "some", "some-not"):
    print(f"{form:9} {categorical(form, class_set(empty), class_set(some), env)}")
