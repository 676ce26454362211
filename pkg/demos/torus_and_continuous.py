"""Closed-form projections on the torus and for unions of rectangles.

Run with ``python3 demos/torus_and_continuous.py``.
"""
# %%
from fractions import Fraction

import numpy as np

from tomolines import RectUnion, continuous_project, inner_product, torus_line_sums, torus_project
from tomolines.torus import admissible_directions, are_independent

# %% torus: every line of one direction meets every line of the other once
n = 5
dirs = [(1, 0), (0, 1), (1, 1), (1, 4)]
print("pairwise independent:", all(are_independent(a, b, n) for a in dirs for b in dirs if a != b))
print(len(admissible_directions(n)), "admissible directions for n =", n)

g = np.random.default_rng(0).integers(0, 2, (n, n))
inst = torus_line_sums(g, dirs)
f0 = torus_project(inst)
print("sums kept:", torus_line_sums(f0, dirs).line_sums == inst.line_sums)
print("|f0|^2 =", sum(x * x for x in f0.flat), "  |g|^2 =", int((g * g).sum()))

# %% continuous: row and column integrals of a union of rectangles
A = RectUnion(3, 2, [(0, 0, Fraction(3, 2), 1), (2, Fraction(1, 2), 3, 2)])
p = continuous_project(A)
print("measure", A.measure, " constant term", p.constant)
print("f0 at (1, 1/2) =", p(1, Fraction(1, 2)))
print("<f0, f0> =", inner_product(p, p), " <f0, 1_A> =", inner_product(p, A.as_test_function()))
