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
# # The graph model
#
# Elements are atoms, tuples and arrows `α -> a` with `α` a finite set of
# elements.  A model set is a set of elements, and application keeps the
# consequents of those arrows whose antecedent fits inside the argument.

# %%
from organon.kernel import (Arrow, Atom, Bounds, apply, apply_chain, combinator_K,
                            combinator_S, enumerate_set, level, parse_element, print_element)

def show(s):
    return "{" + ", ".join(sorted(map(print_element, s))) + "}"


a, b, c = Atom("a"), Atom("b"), Atom("c")
m = frozenset([Arrow([a], b), Arrow([a, c], c), Arrow([], a)])
print("M        =", show(m))
print("M {a}    =", show(apply(m, frozenset([a]))))
print("M {a, c} =", show(apply(m, frozenset([a, c]))))

# %% [markdown]
# Levels count arrow nesting.  Every bound in the library is explicit, and an
# enumeration that would exceed its cap raises instead of truncating.

# %%
for text in ["a", "({} -> a)", "({a} -> ({b} -> c))"]:
    print(f"{text:22} level {level(parse_element(text))}")

# %% [markdown]
# ## K and S
#
# Both combinators are infinite sets, represented by membership tests plus an
# application rule.  The laws checked here are `K M N = M` and
# `S M N P = (M P)(N P)`.

# %%
K, S = combinator_K(), combinator_S()
M = frozenset([Arrow([a], Arrow([], b)), Arrow([], Arrow([b], c))])
N = frozenset([Arrow([a], b)])
P = frozenset([a])
print("K M N      =", show(apply(apply(K, M), N)))
print("S M N P    =", show(apply_chain(S, [M, N, P])))
print("(M P)(N P) =", show(apply(apply(M, P), apply(N, P))))

# %% [markdown]
# `S K K` behaves as the identity on every argument.

# %%
I = apply(apply(S, K), K)
for arg in [frozenset(), frozenset([a, b]), frozenset([Arrow([a], c)])]:
    print(show(arg), "->", show(apply(I, arg)))

# %% [markdown]
# Restricted to a small atom set and low levels, K can be listed.

# %%
small_k = enumerate_set(combinator_K([a]), Bounds(2, 8, 1000))
print(show(small_k))
