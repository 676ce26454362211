from fractions import Fraction

import numpy as np
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from tomolines import exact

small = st.integers(-4, 4)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5), st.integers(1, 6), st.data())
def test_rank_and_nullspace_match_sympy(r, c, data):
    rows = [[data.draw(small) for _ in range(c)] for _ in range(r)]
    M = sympy.Matrix(rows)
    assert exact.rank(rows) == M.rank()
    ns = exact.nullspace(rows, c)
    assert len(ns) == c - M.rank()
    for v in ns:
        assert all(x == 0 for x in exact.matvec(rows, v))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5), st.integers(1, 5), st.data())
def test_solve(r, c, data):
    rows = [[data.draw(small) for _ in range(c)] for _ in range(r)]
    x0 = [Fraction(data.draw(small), data.draw(st.integers(1, 4))) for _ in range(c)]
    rhs = exact.matvec(rows, x0)
    x = exact.solve(rows, rhs)
    assert x is not None and exact.matvec(rows, x) == rhs


def test_inconsistent_returns_none():
    assert exact.solve([[1, 1], [2, 2]], [1, 3]) is None


def test_rref_pivots():
    R, piv = exact.rref([[0, 2, 4], [1, 1, 1]])
    assert piv == [0, 1]
    assert R[0] == [1, 0, -1] and R[1] == [0, 1, 2]


def test_transpose_dot():
    assert exact.transpose([[1, 2], [3, 4]]) == [[1, 3], [2, 4]]
    assert exact.dot([Fraction(1, 2), 2], [2, np.int64(3)]) == 7
