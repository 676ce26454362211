"""Switching polynomials and switching elements (ghosts).

Every grid with zero line sums along a valid direction set is a unique
combination of the translates ``x**u * y**v * F_S(x, y)`` read as grids.
The lexicographically first nonzero cell of each translate (its corner)
carries the value +-1, which makes decomposition a triangular peel.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache, reduce
from numbers import Rational

import numpy as np

from . import exact
from .errors import DecompositionResidual, IndexOutOfRange, NotZeroSum
from .grid import (
    COMPAT_TOL,
    LineSumTable,
    _as_direction,
    as_direction_set,
    as_grid,
    compute_line_sums,
    is_exact,
    particular_solution,
    validate_direction_set,
)

log = logging.getLogger(__name__)


class BivariatePolynomial:
    """Sparse polynomial in ``x, y`` with integer coefficients.

    >>> p = BivariatePolynomial({(1, 0): 1, (0, 0): -1})
    >>> (p * BivariatePolynomial({(0, 1): 1, (0, 0): -1})).coeffs
    {(0, 0): 1, (0, 1): -1, (1, 0): -1, (1, 1): 1}
    """

    def __init__(self, coeffs):
        self.coeffs = {tuple(k): int(v) for k, v in sorted(coeffs.items()) if v != 0}

    @classmethod
    def one(cls):
        return cls({(0, 0): 1})

    def __mul__(self, other):
        out = {}
        for (i1, j1), c1 in self.coeffs.items():
            for (i2, j2), c2 in other.coeffs.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, 0) + c1 * c2
        return BivariatePolynomial(out)

    def __eq__(self, other):
        return isinstance(other, BivariatePolynomial) and self.coeffs == other.coeffs

    def __repr__(self):
        return f"BivariatePolynomial({self.coeffs})"

    def shift(self, u: int, v: int) -> "BivariatePolynomial":
        return BivariatePolynomial({(i + u, j + v): c for (i, j), c in self.coeffs.items()})

    @property
    def degx(self) -> int:
        return max((i for i, _ in self.coeffs), default=0)

    @property
    def degy(self) -> int:
        return max((j for _, j in self.coeffs), default=0)

    def sum_of_squares(self) -> int:
        return sum(c * c for c in self.coeffs.values())


def direction_polynomial(d) -> BivariatePolynomial:
    """Binomial with zero line sums along ``d``.

    For ``b < 0`` this is ``x**a - y**|b|``; a single monomial could never
    have zero line sums.
    """
    d = _as_direction(d)
    a, b = d.a, d.b
    if a > 0 and b < 0:
        log.info("direction %s uses the binomial x^%d - y^%d", d.key, a, -b)
        return BivariatePolynomial({(a, 0): 1, (0, -b): -1})
    # covers (1, 0) -> x - 1, (0, 1) -> y - 1 and a, b > 0 -> x^a y^b - 1
    return BivariatePolynomial({(a, b): 1, (0, 0): -1})


def switching_polynomial(S) -> BivariatePolynomial:
    S = as_direction_set(S)
    return reduce(lambda p, d: p * direction_polynomial(d), S, BivariatePolynomial.one())


def weight_R(S) -> int:
    """Sum of squared coefficients of the switching polynomial."""
    return switching_polynomial(S).sum_of_squares()


def _poly_corner(p: BivariatePolynomial) -> tuple[int, int]:
    return min(p.coeffs)


def switching_element(u: int, v: int, S, m: int, n: int) -> np.ndarray:
    S = as_direction_set(S)
    M, N = validate_direction_set(S, m, n)
    if not (0 <= u < m - M and 0 <= v < n - N):
        raise IndexOutOfRange(f"(u, v) = {(u, v)} outside [0, {m - M}) x [0, {n - N})")
    g = np.zeros((m, n), dtype=np.int64)
    for (i, j), c in switching_polynomial(S).coeffs.items():
        g[i + u, j + v] = c
    return g


def bottom_left_corners(S, m: int, n: int) -> list[tuple[int, int]]:
    S = as_direction_set(S)
    M, N = validate_direction_set(S, m, n)
    ci, cj = _poly_corner(switching_polynomial(S))
    return sorted((u + ci, v + cj) for u in range(m - M) for v in range(n - N))


@dataclass(frozen=True)
class SwitchingBasis:
    """All switching elements of ``S`` on an ``m x n`` grid.

    ``elements``, ``supports`` and ``corners`` are aligned and in
    lexicographic ``(u, v)`` order, which is also the lexicographic order of
    the corners.  ``supports[k]`` lists ``(i, j, value)`` for the nonzero
    cells of ``elements[k]``.
    """

    S: object
    m: int
    n: int
    offsets: tuple
    elements: tuple
    supports: tuple
    corners: tuple
    corner_values: tuple
    weight: int

    @property
    def dim(self) -> int:
        return len(self.offsets)

    def as_dict(self) -> dict:
        return dict(zip(self.offsets, self.elements))

    def combine(self, coeffs) -> np.ndarray:
        """``sum c_uv * m_(u,v,S)``; ``coeffs`` is a mapping or a sequence in basis order."""
        if isinstance(coeffs, dict):
            coeffs = [coeffs.get(o, 0) for o in self.offsets]
        if any(isinstance(c, Rational) and not isinstance(c, (int, np.integer)) for c in coeffs):
            dtype = object
        elif any(isinstance(c, (float, np.floating)) for c in coeffs):
            dtype = float
        else:
            dtype = np.int64
        out = np.zeros((self.m, self.n), dtype=dtype)
        for c, supp in zip(coeffs, self.supports):
            if c != 0:
                for i, j, val in supp:
                    out[i, j] += val * c
        return out


@lru_cache(maxsize=512)
def _basis(S, m: int, n: int) -> SwitchingBasis:
    M, N = validate_direction_set(S, m, n)
    poly = switching_polynomial(S)
    ci, cj = _poly_corner(poly)
    offsets, elements, supports, corners = [], [], [], []
    for u in range(m - M):
        for v in range(n - N):
            e = switching_element(u, v, S, m, n)
            e.flags.writeable = False
            offsets.append((u, v))
            elements.append(e)
            supports.append(tuple((i + u, j + v, c) for (i, j), c in poly.coeffs.items()))
            corners.append((u + ci, v + cj))
    return SwitchingBasis(S, m, n, tuple(offsets), tuple(elements), tuple(supports),
                          tuple(corners), tuple(int(e[c]) for e, c in zip(elements, corners)),
                          poly.sum_of_squares())


def switching_basis(S, m: int, n: int) -> SwitchingBasis:
    return _basis(as_direction_set(S), m, n)


def _zero_sum_violation(g, S):
    t = compute_line_sums(g, S)
    return max((abs(v) for per in t.sums.values() for v in per.values()), default=0)


def _peel(basis: SwitchingBasis, residual: np.ndarray):
    coeffs = []
    for supp, corner, cv in zip(basis.supports, basis.corners, basis.corner_values):
        c = residual[corner] * cv  # cv is +-1, so this is residual / cv
        coeffs.append(c)
        if c != 0:
            for i, j, val in supp:
                residual[i, j] -= val * c
    return coeffs, residual


def decompose(g, S, tol: float = COMPAT_TOL) -> dict:
    """Coefficients ``c_uv`` with ``g == sum c_uv * m_(u,v,S)``.

    Exact grids are checked exactly; float grids within ``tol`` scaled by
    the grid magnitude.
    """
    g = as_grid(g)
    S = as_direction_set(S)
    m, n = g.shape
    basis = switching_basis(S, m, n)
    exact_mode = is_exact(g)
    scale = 1.0 if exact_mode else tol * max(1.0, float(np.max(np.abs(g.astype(float)))))
    residual = g.astype(object) if exact_mode else g.astype(float)
    coeffs, residual = _peel(basis, residual)
    left = max(abs(x) for x in residual.flat)
    if (left != 0) if exact_mode else (left > scale * basis.dim * basis.weight):
        # a grid outside the span: say whether its line sums were the reason
        bad = _zero_sum_violation(g, S)
        if (bad != 0) if exact_mode else (bad > scale * max(m, n)):
            raise NotZeroSum(f"grid has a nonzero line sum (max |sum| = {bad})")
        raise DecompositionResidual(f"peeling left a residual of size {left}")
    return dict(zip(basis.offsets, coeffs))


def recompose(coeffs: dict, S, m: int, n: int) -> np.ndarray:
    return switching_basis(S, m, n).combine(coeffs)


def solve_corner_values(basis: SwitchingBasis, targets: dict) -> list:
    """Coefficients of the basis combination taking prescribed values at the corners."""
    current = np.zeros((basis.m, basis.n), dtype=object)
    coeffs = []
    for supp, corner, cv in zip(basis.supports, basis.corners, basis.corner_values):
        c = (targets[corner] - current[corner]) * cv
        coeffs.append(c)
        if c != 0:
            for i, j, val in supp:
                current[i, j] += val * c
    return coeffs


def reconstruct_from_corners(corner_values: dict, t: LineSumTable, S, m: int, n: int) -> np.ndarray:
    """The unique grid with line sums ``t`` and the given values on the corner set."""
    S = as_direction_set(S)
    basis = switching_basis(S, m, n)
    missing = set(basis.corners) - set(corner_values)
    if missing:
        raise IndexOutOfRange(f"no value given for corners {sorted(missing)}")
    base = particular_solution(t, S, m, n)
    exact_mode = t.is_exact() and all(isinstance(v, Rational) for v in corner_values.values())
    if exact_mode:
        targets = {c: exact.to_fraction(corner_values[c]) - base[c] for c in basis.corners}
    else:
        base = base.astype(float)
        targets = {c: float(corner_values[c]) - base[c] for c in basis.corners}
    coeffs = solve_corner_values(basis, targets)
    out = base + basis.combine(coeffs)
    if exact_mode:
        out = np.vectorize(_normalize, otypes=[object])(out)
    else:
        out = out.astype(float)
    return out


def _normalize(x):
    x = exact.to_fraction(x)
    return int(x) if x.denominator == 1 else x


def element_to_json(u: int, v: int, element: np.ndarray) -> dict:
    entries = [[int(i), int(j), int(element[i, j])] for i, j in zip(*np.nonzero(element))]
    return {"u": u, "v": v, "entries": entries}


def element_from_json(obj: dict, m: int, n: int) -> np.ndarray:
    g = np.zeros((m, n), dtype=np.int64)
    for i, j, val in obj["entries"]:
        g[i, j] = val
    return g
