import itertools
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from conftest import small_direction_sets, valid_shapes
from tomolines.errors import DecompositionResidual, IndexOutOfRange, NotZeroSum
from tomolines.grid import compute_line_sums, dependency_count, line_sum_matrix
from tomolines.switching import (
    BivariatePolynomial,
    bottom_left_corners,
    decompose,
    direction_polynomial,
    element_from_json,
    element_to_json,
    reconstruct_from_corners,
    recompose,
    switching_basis,
    switching_element,
    switching_polynomial,
    weight_R,
)

X, Y = sympy.symbols("x y")


def _sympy_direction(a, b):
    if b < 0:
        return X**a - Y**(-b)
    return X**a * Y**b - 1


def _as_sympy(p: BivariatePolynomial):
    return sympy.expand(sum(c * X**i * Y**j for (i, j), c in p.coeffs.items()))


@pytest.mark.parametrize("S,R", [
    ([(1, 0), (0, 1)], 4),
    ([(1, 0), (0, 1), (1, 1)], 6),
    ([(1, 0), (0, 1), (1, 1), (1, -1)], 8),
    ([(1, 0), (0, 1), (1, 1), (1, -1), (2, 1), (2, -1), (1, 2), (1, -2)], 24),
])
def test_weight_R(S, R):
    assert weight_R(S) == R


def test_simple_polynomial():
    p = switching_polynomial([(1, 0), (0, 1)])
    assert p.coeffs == {(0, 0): 1, (1, 0): -1, (0, 1): -1, (1, 1): 1}


def test_polynomials_match_sympy_product():
    for S in small_direction_sets(3, 6)[::7]:
        ours = _as_sympy(switching_polynomial(S))
        ref = sympy.expand(sympy.Mul(*[_sympy_direction(a, b) for a, b in S]))
        assert sympy.expand(ours - ref) == 0, S


def test_negative_slope_is_binomial():
    # on a 2x2 grid the only {-1,0,1} patterns with zero (1,-1)-sums are +-(x - y)
    p = direction_polynomial((1, -1))
    assert p.coeffs == {(1, 0): 1, (0, 1): -1}
    found = []
    for vals in itertools.product((-1, 0, 1), repeat=4):
        g = np.array(vals).reshape(2, 2)
        if g.any() and not any(compute_line_sums(g, [(1, -1)]).vector()):
            found.append(g)
    elem = switching_element(0, 0, [(1, -1)], 2, 2)
    assert len(found) == 2
    assert any((f == elem).all() for f in found) and any((f == -elem).all() for f in found)


def test_element_zero_sums_and_shape():
    S = [(1, 0), (0, 1), (1, 1), (1, -1)]
    for u, v in itertools.product(range(2), range(1)):
        e = switching_element(u, v, S, 5, 4)
        assert not any(compute_line_sums(e, S).vector())
    with pytest.raises(IndexOutOfRange):
        switching_element(2, 0, S, 5, 4)


def test_corners_are_lex_first_nonzero_with_unit_value():
    for S in small_direction_sets(3, 5)[::5]:
        for m, n in valid_shapes(S, 5)[:2]:
            b = switching_basis(S, m, n)
            assert list(b.corners) == sorted(b.corners)
            assert b.corners == tuple(bottom_left_corners(S, m, n))
            for e, c, cv in zip(b.elements, b.corners, b.corner_values):
                nz = sorted(zip(*np.nonzero(e)))
                assert nz[0] == c and abs(cv) == 1


def _rank(rows):
    rows = [[QQ(int(x)) for x in r] for r in rows]
    return DomainMatrix(rows, (len(rows), len(rows[0])), QQ).rank()


def test_basis_spans_nullspace():
    """dim = mn - rank(L) and the elements are independent, checked exactly."""
    for S in small_direction_sets(3, 6)[::3]:
        for m, n in valid_shapes(S, 6)[::2]:
            b = switching_basis(S, m, n)
            L = line_sum_matrix(S, m, n)
            assert b.dim == m * n - _rank(L.tolist())
            assert b.dim == (m - sum(a for a, _ in S)) * (n - sum(abs(x) for _, x in S))
            assert not np.any(L @ np.array([e.ravel() for e in b.elements]).T)
            assert _rank([e.ravel().tolist() for e in b.elements]) == b.dim
            assert L.shape[0] - _rank(L.tolist()) == dependency_count(S, m, n)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([[(1, 0), (0, 1)], [(1, 0), (0, 1), (1, 1)], [(1, 0), (1, -1)],
                        [(1, 0), (0, 1), (1, 1), (1, -1)], [(2, 1), (0, 1)]]),
       st.integers(0, 2**32 - 1))
def test_decompose_recompose_roundtrip(S, seed):
    rng = np.random.default_rng(seed)
    M = sum(a for a, _ in S)
    N = sum(abs(b) for _, b in S)
    m, n = int(rng.integers(M + 1, M + 4)), int(rng.integers(N + 1, N + 4))
    b = switching_basis(S, m, n)
    coeffs = {o: int(rng.integers(-4, 5)) for o in b.offsets}
    g = recompose(coeffs, S, m, n)
    assert decompose(g, S) == coeffs
    q = {o: Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 7))) for o in b.offsets}
    assert decompose(recompose(q, S, m, n), S) == q
    f = {o: float(rng.normal()) for o in b.offsets}
    got = decompose(recompose(f, S, m, n), S)
    assert max(abs(got[o] - f[o]) for o in b.offsets) < 1e-9


def test_decompose_rejects_nonzero_sums():
    g = np.zeros((3, 3), dtype=int)
    g[0, 0] = 1
    with pytest.raises(NotZeroSum):
        decompose(g, [(1, 0), (0, 1)])


def test_decompose_unique_by_triangularity():
    S = [(1, 0), (0, 1), (1, 1)]
    b = switching_basis(S, 5, 5)
    for k, e in enumerate(b.elements):
        c = decompose(e, S)
        assert c[b.offsets[k]] == 1 and sum(abs(x) for x in c.values()) == 1


def test_reconstruct_from_corners_unique(rng):
    S = [(1, 0), (0, 1), (1, -1)]
    m, n = 5, 5
    g = rng.integers(0, 3, (m, n))
    t = compute_line_sums(g, S)
    b = switching_basis(S, m, n)
    h = reconstruct_from_corners({c: int(g[c]) for c in b.corners}, t, S, m, n)
    assert (h == g).all()
    # changing corners changes the grid by a switching combination
    h2 = reconstruct_from_corners({c: 0 for c in b.corners}, t, S, m, n)
    assert compute_line_sums(h2, S) == t
    assert all(h2[c] == 0 for c in b.corners)
    with pytest.raises(IndexOutOfRange):
        reconstruct_from_corners({}, t, S, m, n)


def test_reconstruct_float_path(rng):
    S = [(1, 0), (0, 1)]
    g = rng.random((4, 3))
    t = compute_line_sums(g, S)
    b = switching_basis(S, 4, 3)
    h = reconstruct_from_corners({c: float(g[c]) for c in b.corners}, t, S, 4, 3)
    assert np.allclose(h, g, atol=1e-10)


def test_element_json_roundtrip():
    e = switching_element(1, 0, [(1, 0), (0, 1), (1, 1)], 4, 4)
    assert (element_from_json(element_to_json(1, 0, e), 4, 4) == e).all()


def test_decompose_float_tolerance():
    # a float grid with zero sums always decomposes; a residual only appears
    # when the tolerance is absurdly small relative to the rounding noise
    S = [(1, 0), (0, 1)]
    g = recompose({(0, 0): 1e6 + 0.1, (1, 1): -3.3}, S, 4, 4)
    assert decompose(g, S)[(1, 1)] == pytest.approx(-3.3)
    with pytest.raises((DecompositionResidual, NotZeroSum)):
        decompose(g + 1e-3 * (np.arange(16).reshape(4, 4) % 3 == 0), S, tol=1e-15)


def test_element_norm_is_weight():
    for S in small_direction_sets(3, 6)[::4]:
        m, n = valid_shapes(S, 6)[-1]
        b = switching_basis(S, m, n)
        assert all(int((e * e).sum()) == b.weight == weight_R(S) for e in b.elements)


def test_nonzero_combination_decomposes_nonzero(rng):
    S = [(1, 0), (0, 1), (1, -1)]
    b = switching_basis(S, 5, 5)
    for _ in range(20):
        c = [int(x) for x in rng.integers(-1, 2, b.dim)]
        if any(c):
            assert any(decompose(b.combine(c), S).values())


def test_negative_slope_logs_note(caplog):
    with caplog.at_level("INFO", logger="tomolines.switching"):
        direction_polynomial((2, -1))
    assert any("(2, -1)" in r.getMessage() or "2,-1" in r.getMessage() for r in caplog.records)
