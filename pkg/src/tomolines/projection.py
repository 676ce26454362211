"""Minimum-norm real solutions of line-sum systems."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction

import numpy as np
from scipy.sparse.linalg import LinearOperator, cg

from . import exact
from .errors import IncompatibleLineSums, InconsistentTotals
from .grid import (
    COMPAT_TOL,
    LineSumTable,
    _table_vector,
    as_direction_set,
    check_compatibility,
    compute_line_sums,
    line_index,
    particular_solution,
    validate_direction_set,
)
from .switching import switching_basis


@dataclass(frozen=True)
class ProjectionResult:
    f0: np.ndarray
    norm_sq: object
    method: str
    residual: float


def norm_sq(g):
    """Squared Euclidean norm; exact for int/Fraction grids."""
    g = np.asarray(g)
    if g.dtype == object:
        return sum((v * v for v in g.flat), 0)
    if np.issubdtype(g.dtype, np.integer) or g.dtype == bool:
        return int((g.astype(np.int64) ** 2).sum())
    return float((g.astype(float) ** 2).sum())


def project_simple(row_sums, col_sums) -> ProjectionResult:
    """Closed-form projection for row and column sums.

    ``f0(i, j) = c_i/n + r_j/m - D/(m n)`` with ``m = len(col_sums)`` columns
    and ``n = len(row_sums)`` rows; all arithmetic in ``Fraction``.
    """
    r = [Fraction(v) for v in row_sums]
    c = [Fraction(v) for v in col_sums]
    if sum(r) != sum(c):
        raise InconsistentTotals(f"row total {sum(r)} != column total {sum(c)}")
    m, n = len(c), len(r)
    D = sum(r)
    f0 = np.empty((m, n), dtype=object)
    for i in range(m):
        for j in range(n):
            f0[i, j] = c[i] / n + r[j] / m - D / (m * n)
    return ProjectionResult(f0, norm_sq(f0), "closed_form", 0.0)


def project_general(t: LineSumTable, S, m: int, n: int, tol: float = COMPAT_TOL) -> ProjectionResult:
    """Minimum-norm grid for arbitrary valid direction sets.

    Solves the Gram system ``L L^T y = t`` by conjugate gradients with ``L``
    applied matrix-free, then returns ``f0 = L^T y``.
    """
    S = as_direction_set(S)
    validate_direction_set(S, m, n)
    residual = check_compatibility(t, S, m, n)
    if residual > tol:
        raise IncompatibleLineSums(f"line sums admit no real solution (residual {residual:.3g})")
    b = np.asarray(_table_vector(t, S, m, n), dtype=float)
    index, n_lines = line_index(S, m, n)

    def forward(g):
        return sum(np.bincount(row, weights=g, minlength=n_lines) for row in index)

    def adjoint(y):
        return y[index].sum(axis=0)

    gram = LinearOperator((n_lines, n_lines), matvec=lambda y: forward(adjoint(np.ravel(y))),
                          dtype=float)
    if np.any(b):
        y, _ = cg(gram, b, rtol=1e-12, atol=0.0, maxiter=10 * n_lines)
    else:
        y = np.zeros(n_lines)
    f0 = adjoint(y)
    res = float(np.linalg.norm(forward(f0) - b))
    return ProjectionResult(f0.reshape(m, n), norm_sq(f0), "minimum_norm_numeric", res)


@lru_cache(maxsize=64)
def _switching_gram_inverse(S, m: int, n: int) -> list:
    basis = switching_basis(S, m, n)
    flat = [e.ravel().tolist() for e in basis.elements]
    return exact.inverse([[int(np.dot(a, b)) for b in flat] for a in flat])


def project_exact(t: LineSumTable, S, m: int, n: int) -> ProjectionResult:
    """Rational minimum-norm grid for any valid ``S`` with rational sums.

    Takes an exact particular solution and removes its component in the
    span of the switching elements (Gram system solved over ``Fraction``).
    """
    S = as_direction_set(S)
    if not t.is_exact():
        raise ValueError("exact projection needs rational line sums")
    p = particular_solution(t, S, m, n)
    basis = switching_basis(S, m, n)
    inner = [sum((val * p[i, j] for i, j, val in supp), Fraction(0)) for supp in basis.supports]
    coef = exact.matvec(_switching_gram_inverse(S, m, n), inner)
    f0 = p - basis.combine(coef)
    return ProjectionResult(f0, norm_sq(f0), "exact_projection", 0.0)


def project(t: LineSumTable, S, m: int, n: int, tol: float = COMPAT_TOL) -> ProjectionResult:
    """Closed form when ``S`` is rows and columns with exact sums, else numeric."""
    S = as_direction_set(S)
    if S.is_simple and t.is_exact():
        validate_direction_set(S, m, n)
        _table_vector(t, S, m, n)
        rows = [t[(1, 0)].get(j, 0) for j in range(n)]
        cols = [t[(0, 1)].get(-i, 0) for i in range(m)]
        return project_simple(rows, cols)
    return project_general(t, S, m, n, tol)


def projection_of(g, S) -> ProjectionResult:
    """Projection for the line sums of an existing grid."""
    g = np.asarray(g)
    m, n = g.shape
    return project(compute_line_sums(g, S), S, m, n)
