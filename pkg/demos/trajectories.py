# %% [markdown]
# # Trajectories and their labels

# %%
from fractions import Fraction

from multimap import fixtures
from multimap.trajectory import check_labeled, label_special, sample_trajectory, step_options

F = fixtures.type_three()
for m in step_options(F, Fraction(1, 2)):
    print(m.symbol, m.kind, m.value if m.value is not None else m.range)

# %%
t = sample_trajectory(F, Fraction(1, 3), 12, seed=4)
lab = label_special(F, t)
print([str(p) for p in t.points])
print(" ".join(lab.word))

# %%
# A closed-graph label that is not an open-graph label
G = fixtures.not_uniformly_expanding()
print(check_labeled(G, [0, Fraction(1, 3)], ["1"]))
