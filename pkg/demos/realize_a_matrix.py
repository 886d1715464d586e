# %% [markdown]
# # Realizing the entropy of a 0/1 matrix
#
# `realize` draws one line per matrix entry on a grid of half-cells, merges
# two entries of the first row into one steeper line, and adds ramps so the
# map is defined everywhere.

# %%
import numpy as np
from pathlib import Path

from multimap.errors import MultimapError
from multimap.model import normalize_to_unit
from multimap.realization import figure_coordinates, realize, verify_realization
from multimap.render import RenderOptions, render_svg

A = np.array([[0, 1, 1], [1, 0, 0], [1, 1, 0]])
out = realize(A)
for (x0, y0), (x1, y1) in figure_coordinates(out):
    print(f"({x0},{y0}) -- ({x1},{y1})")

# %%
rep = verify_realization(A, out)
print("input  ", rep.input_entropy)
print("C0     ", rep.c0_component_entropy)
print("status ", rep.class_f_verdict.status)
print("golden ", np.log((1 + np.sqrt(5)) / 2))

# %%
Path("realization.svg").write_text(render_svg(out.multimap, RenderOptions(labels=True)))
unit = normalize_to_unit(out.multimap)
print(unit.P)

# %% [markdown]
# Random irreducible matrices behave the same way.

# %%
rng = np.random.default_rng(0)
shown = 0
while shown < 5:
    B = (rng.random((4, 4)) < 0.45).astype(int)
    try:
        r = verify_realization(B, realize(B))
    except MultimapError:  # reducible or zero entropy
        continue
    print(B.tolist(), f"{r.input_entropy:.9f}", f"{r.c0_component_entropy:.9f}")
    shown += 1
