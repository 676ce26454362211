"""Row and column sums of a 6x5 image: projection, rounding and stability.

Run with ``python3 demos/worked_example.py``.
"""
# %%
import itertools
from fractions import Fraction

import numpy as np

from tomolines import (
    binary_radius,
    enumerate_binary_solutions,
    project_simple,
    simple_line_sums,
    stability_bounds,
    to_rows,
)
from tomolines.grid import hamming

rows = [5, 4, 3, 2, 1]       # r_j, bottom row first
cols = [4, 4, 3, 2, 1, 1]    # c_i, left column first
D = sum(rows)

# %% minimum-norm real solution, exact
res = project_simple(rows, cols)
print("30 * f0 (top row printed last):")
for r in to_rows(res.f0):
    print("  ", [int(30 * v) for v in r])
print("|f0|^2 =", res.norm_sq)

# %% every binary solution lies on a sphere around f0
radius = binary_radius(res.norm_sq, D)
print("radius^2 =", radius.radicand, "~", round(radius.radius, 4))

# %% rounding f0 and what the leftover budget allows
rep = stability_bounds(res.f0, D)
print("E =", rep.E, " slack =", rep.slack, " s =", rep.s, " t =", rep.t)
print("rounded F:")
for r in reversed(to_rows(rep.F)):
    print("  ", "".join(str(v) for v in r))

# %% check against the full solution set
sols = enumerate_binary_solutions(simple_line_sums(rows, cols), [(1, 0), (0, 1)], 6, 5)
dist = {sum((Fraction(int(v)) - x) ** 2 for v, x in zip(g.flat, res.f0.flat)) for g in sols}
print(len(sols), "binary solutions, squared distances to f0:", dist)
print("max differences from F:", max(hamming(g, rep.F) for g in sols), "<= s =", rep.s)
pair = max(hamming(a, b) for a, b in itertools.combinations(sols.solutions, 2))
print("max differences between two solutions:", pair, "<= t =", rep.t)

# %% how often is F itself a solution?
print("F is a solution:", any(np.array_equal(g, rep.F) for g in sols))
