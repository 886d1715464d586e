# %% [markdown]
# # A tour of the reference multi-maps
#
# Three small maps exercise most of the library: one that is not uniformly
# expanding but still certifiable, one with vertical pieces, and one built
# from x**2 and x**3 where no finite search can certify anything.

# %%
from multimap import fixtures
from multimap.dynamics import certify_class_F, check_codes_for_points, interval_of_word
from multimap.symbolic import build_matrix, decompose

F = fixtures.not_uniformly_expanding()
M = build_matrix(F)
for a in M.alphabet:
    print(a, "->", " ".join(M.successors(a)))

# %%
# Irreducible components, their type and entropy (natural log)
for c in decompose(M).components:
    print(c.kind, c.symbols, round(c.entropy, 6))

# %%
# Each occurrence of 3 halves the nested interval
for w in ["1", "31", "331", "3312"]:
    print(w, interval_of_word(F, w))

# %%
verdict = certify_class_F(F)
print(verdict.status)
for f in verdict.findings:
    if f.coding:
        print(f.component.symbols, "coding", f.coding.word, f.coding.rule)
    if f.avoiding:
        print(f.component.symbols, "avoiding", f.avoiding.word, f.avoiding.rule)

# %% [markdown]
# ## Verticals
# A component mixing branches, verticals and points gets its certificates
# for free: the vertical symbol pins intervals to a point.

# %%
G = fixtures.type_three()
print(certify_class_F(G).status, interval_of_word(G, "13"))

# %% [markdown]
# ## Squares and cubes
# Every word has I_u = [0, 1], so the verdict stays `unknown`.

# %%
S = fixtures.squares_and_cubes()
v = certify_class_F(S, 6, 6)
print(v.status)
print(check_codes_for_points(S, ["1", "2"], 6))
