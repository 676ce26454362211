import itertools
from fractions import Fraction

import numpy as np
import pytest
import sympy

from tomolines.errors import DependentDirections, InconsistentTotals, NotAdmissible
from tomolines.torus import (
    TorusInstance,
    admissible_directions,
    are_independent,
    line_labels,
    representatives,
    torus_line,
    torus_line_sums,
    torus_project,
)


def torus_matrix(dirs, n):
    rows = []
    for d in dirs:
        labels, _ = line_labels(d, n)
        for t in range(n):
            rows.append((labels.ravel() == t).astype(int).tolist())
    return rows


def zero_sum_basis(dirs, n):
    """Integer basis of grids with vanishing line sums, via sympy."""
    vecs = sympy.Matrix(torus_matrix(dirs, n)).nullspace()
    out = []
    for v in vecs:
        den = sympy.ilcm(*[sympy.fraction(x)[1] for x in v])
        out.append(np.array([int(x * den) for x in v], dtype=object).reshape(n, n))
    return out


def test_admissible():
    assert (1, 0) in admissible_directions(3)
    assert (0, 0) not in admissible_directions(3)
    assert (2, 2) not in admissible_directions(5)
    with pytest.raises(NotAdmissible):
        torus_line((2, 4), (0, 0), 5)


def test_line_is_residue_class():
    assert torus_line((1, 2), (0, 0), 5) == [(0, 0), (1, 2), (2, 4), (3, 1), (4, 3)]


def test_representatives_greedy():
    assert representatives((1, 0), 3) == [(0, 0), (0, 1), (0, 2)]
    assert representatives((0, 1), 3) == [(0, 0), (1, 0), (2, 0)]


def test_independence():
    assert are_independent((1, 0), (0, 1), 6)
    assert not are_independent((1, 1), (1, 3), 4)  # determinant 2
    assert are_independent((1, 1), (1, 2), 4)


def test_dependent_pair_rejected():
    g = np.ones((4, 4), dtype=int)
    inst = torus_line_sums(g, [(1, 1), (1, 3)])
    with pytest.raises(DependentDirections):
        torus_project(inst)


def test_inconsistent_totals_rejected():
    with pytest.raises(InconsistentTotals):
        torus_project(TorusInstance(2, ((1, 0), (0, 1)), {(1, 0): [1, 1], (0, 1): [1, 2]}, 2))


def test_projection_against_pseudoinverse():
    rng = np.random.default_rng(4)
    for n, dirs in [(5, [(1, 0), (0, 1), (1, 1)]), (7, [(1, 0), (0, 1), (1, 2), (1, 3)]), (4, [(1, 0), (0, 1)])]:
        g = rng.integers(0, 2, (n, n))
        f0 = torus_project(torus_line_sums(g, dirs)).astype(float)
        L = np.array(torus_matrix(dirs, n), dtype=float)
        ref = np.linalg.pinv(L) @ (L @ g.ravel())
        assert np.allclose(f0.ravel(), ref, atol=1e-10)


def test_minimal_among_binary_solutions_n4():
    """Brute force on 4x4: every binary grid with the same sums is at least as long."""
    dirs = [(1, 0), (0, 1), (1, 1)]
    bits = ((np.arange(1 << 16)[:, None] >> np.arange(16)[None, :]) & 1).astype(np.int64)
    L = np.array(torus_matrix(dirs, 4), dtype=np.int64)
    sums = bits @ L.T
    g = bits[12345].reshape(4, 4)
    f0 = torus_project(torus_line_sums(g, dirs))
    same = bits[(sums == sums[12345]).all(axis=1)]
    nsq = sum(x * x for x in f0.flat)
    assert all(int((row * row).sum()) >= nsq for row in same)
    # all of them sit at the same distance from f0
    d = {sum((Fraction(int(v)) - x) ** 2 for v, x in zip(row, f0.flat)) for row in same}
    assert len(d) == 1


def test_orthogonal_to_zero_sum_grids():
    n, dirs = 5, [(1, 0), (0, 1), (1, 4)]
    rng = np.random.default_rng(8)
    g = rng.integers(0, 3, (n, n))
    f0 = torus_project(torus_line_sums(g, dirs))
    for h in zero_sum_basis(dirs, n):
        assert sum(a * b for a, b in zip(f0.flat, h.flat)) == 0


def test_float_sums():
    g = np.random.default_rng(1).random((3, 3))
    f0 = torus_project(torus_line_sums(g, [(1, 0), (0, 1)]))
    assert f0.dtype == float
    inst = torus_line_sums(f0, [(1, 0), (0, 1)])
    ref = torus_line_sums(g, [(1, 0), (0, 1)])
    for d in inst.directions:
        assert np.allclose(inst.line_sums[d], ref.line_sums[d])


@pytest.mark.parametrize("n", [2, 3, 4])
def test_partition_small(n):
    for d in admissible_directions(n):
        labels, reps = line_labels(d, n)
        assert len(reps) == n
        assert sorted(np.bincount(labels.ravel())) == [n] * n
    for d1, d2 in itertools.combinations(admissible_directions(n), 2):
        if are_independent(d1, d2, n):
            l1, _ = line_labels(d1, n)
            l2, _ = line_labels(d2, n)
            pairs = set(zip(l1.ravel().tolist(), l2.ravel().tolist()))
            assert len(pairs) == n * n


def test_partition_up_to_12():
    for n in range(1, 13):
        for d in admissible_directions(n):
            labels, reps = line_labels(d, n)
            assert len(reps) == n
            assert (np.bincount(labels.ravel(), minlength=n) == n).all()
            for t, p in enumerate(reps):
                assert all(labels[q] == t for q in torus_line(d, p, n))


@pytest.mark.parametrize("n,dirs", [(2, [(1, 0), (0, 1)]), (3, [(1, 0), (0, 1), (1, 1)]),
                                    (4, [(1, 0), (0, 1)]), (4, [(1, 0), (1, 1)])])
def test_minimality_brute_force(n, dirs):
    size = n * n
    bits = ((np.arange(1 << size)[:, None] >> np.arange(size)[None, :]) & 1).astype(np.int64)
    L = np.array(torus_matrix(dirs, n), dtype=np.int64)
    sums = bits @ L.T
    rng = np.random.default_rng(n)
    for pick in rng.choice(1 << size, size=min(20, 1 << size), replace=False):
        g = bits[pick].reshape(n, n)
        f0 = torus_project(torus_line_sums(g, dirs))
        nsq = sum(x * x for x in f0.flat)
        for row in bits[(sums == sums[pick]).all(axis=1)]:
            gap = int((row * row).sum()) - nsq
            assert gap >= 0
            assert (gap == 0) == all(Fraction(int(v)) == x for v, x in zip(row, f0.flat))
