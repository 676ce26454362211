"""Switching elements and integer solutions for three directions.

Run with ``python3 demos/integer_solutions.py``.
"""
# %%
import numpy as np

from tomolines import (
    compute_line_sums,
    construct_integer_solution,
    decompose,
    distance_bound,
    nearest_integer_solution,
    switching_basis,
    switching_polynomial,
    to_rows,
    weight_R,
)
from tomolines.projection import project_exact

S = [(1, 0), (0, 1), (1, 1)]
m, n = 7, 7
rng = np.random.default_rng(2)

# %% the switching polynomial and one element
print("F_S coefficients:", switching_polynomial(S).coeffs)
print("R(S) =", weight_R(S))
basis = switching_basis(S, m, n)
print(basis.dim, "switching elements; the first one:")
for r in reversed(to_rows(basis.elements[0])):
    print("  ", " ".join(f"{v:2d}" for v in r))

# %% any zero-sum grid splits uniquely into switching elements
coeffs = {o: int(c) for o, c in zip(basis.offsets, rng.integers(-2, 3, basis.dim))}
ghost = basis.combine(coeffs)
print("zero line sums:", not any(compute_line_sums(ghost, S).vector()))
print("decomposition recovered:", decompose(ghost, S) == coeffs)

# %% an integer solution from integer line sums
g = rng.integers(0, 5, (m, n))
t = compute_line_sums(g, S)
f = construct_integer_solution(t, S, m, n)
print("constructed grid reproduces the sums:", compute_line_sums(f, S) == t)

# %% the integer solution closest to the shortest real one
f0 = project_exact(t, S, m, n).f0
sol = nearest_integer_solution(f0, t, S, m, n)
print(f"distance {sol.distance:.3f} <= bound {distance_bound(S, m, n):.3f}  ({sol.method})")
print("original grid is at", round(float(np.sqrt(float(((g - f0) ** 2).sum()))), 3))
