"""Integer solutions of line-sum systems.

The integer solutions form ``g + L`` where ``g`` is any integer solution and
``L`` is the lattice spanned by the switching elements.  Each basis vector
has squared length ``R(S)``, so every real solution sits in a cell whose
nearest vertex is within ``sqrt(R(S) * dim) / 2``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DimensionTooLarge, IncompatibleLineSums, NonIntegerResult
from .grid import (
    COMPAT_TOL,
    LineSumTable,
    _table_vector,
    as_direction_set,
    as_grid,
    compute_line_sums,
    is_compatible,
    is_exact,
    line_index,
    validate_direction_set,
)
from .projection import ProjectionResult, norm_sq
from .switching import (
    _poly_corner,
    bottom_left_corners,
    decompose,
    reconstruct_from_corners,
    switching_basis,
    switching_polynomial,
    weight_R,
)

MAX_VERTEX_DIM = 20


@dataclass(frozen=True)
class LatticeSolution:
    f: np.ndarray
    anchor: np.ndarray
    distance: float
    distance_sq: object
    bound: float
    bound_sq: Fraction
    method: str
    candidate: bool = False

    @property
    def within_bound(self) -> bool:
        if isinstance(self.distance_sq, float):
            return self.distance_sq <= float(self.bound_sq) * (1 + 1e-12)
        return self.distance_sq <= self.bound_sq


def distance_bound_sq(S, m: int, n: int) -> Fraction:
    S = as_direction_set(S)
    M, N = validate_direction_set(S, m, n)
    return Fraction(weight_R(S) * (m - M) * (n - N), 4)


def distance_bound(S, m: int, n: int) -> float:
    """Guaranteed distance from any real solution to some integer solution."""
    return math.sqrt(distance_bound_sq(S, m, n))


def construct_integer_solution(t: LineSumTable, S, m: int, n: int) -> np.ndarray:
    """Integer grid with line sums ``t`` by successive elimination of cells.

    A cell alone on one of its remaining lines takes that line's residual;
    otherwise the first corner of a switching translate lying entirely in
    the remaining cells is free and is set to 0.
    """
    S = as_direction_set(S)
    validate_direction_set(S, m, n)
    if not t.is_integral():
        raise NonIntegerResult("integer construction needs integer line sums")
    if not is_compatible(t, S, m, n):
        raise IncompatibleLineSums("line sums admit no real solution")
    need = [int(v) for v in _table_vector(t, S, m, n)]
    index, n_lines = line_index(S, m, n)
    members = [[] for _ in range(n_lines)]
    for c in range(m * n):
        for ln in index[:, c]:
            members[ln].append(c)

    M, N = S.M, S.N
    support = list(switching_polynomial(S).coeffs)
    ci, cj = _poly_corner(switching_polynomial(S))
    translates = [(u, v) for u in range(m - M) for v in range(n - N)]

    remaining = np.ones((m, n), dtype=bool)
    count = [len(cs) for cs in members]
    values = np.zeros((m, n), dtype=np.int64)

    def remove(i, j, value):
        values[i, j] = value
        remaining[i, j] = False
        for ln in index[:, i * n + j]:
            need[ln] -= value
            count[ln] -= 1

    while remaining.any():
        single = next((ln for ln in range(n_lines) if count[ln] == 1), None)
        if single is not None:
            c = next(c for c in members[single] if remaining.flat[c])
            remove(c // n, c % n, need[single])
            continue
        free = next(((u + ci, v + cj) for u, v in translates
                     if all(remaining[u + di, v + dj] for di, dj in support)), None)
        if free is None:
            return _fallback(t, S, m, n)
        remove(*free, 0)

    if any(need):
        return _fallback(t, S, m, n)
    return values


def _fallback(t, S, m, n) -> np.ndarray:
    g = reconstruct_from_corners({c: 0 for c in bottom_left_corners(S, m, n)}, t, S, m, n)
    if any(v != int(v) for v in g.flat):
        raise NonIntegerResult("corner reconstruction produced a non-integer grid")
    return g.astype(np.int64)


def _check_anchor(h, t: LineSumTable, S, tol: float):
    got = compute_line_sums(h, S)
    for d in S:
        for key, v in t.sums[d].items():
            diff = abs(got.sums[d].get(key, 0) - v)
            if (diff != 0) if is_exact(h) else (diff > tol * max(1.0, abs(float(v)))):
                raise IncompatibleLineSums(f"anchor grid misses line sum {d.key}:{key} by {diff}")


def _round_half(c):
    return math.floor(c + Fraction(1, 2)) if isinstance(c, Fraction) else math.floor(c + 0.5)


def _nearest_vertex(gram: np.ndarray, c: np.ndarray, base: np.ndarray) -> np.ndarray:
    """Vertex ``base + e``, ``e in {0,1}^dim``, minimising ``(c - k)^T G (c - k)``."""
    dim = len(c)
    best, best_val = None, np.inf
    chunk = 1 << min(dim, 14)
    for start in range(0, 1 << dim, chunk):
        ids = np.arange(start, min(start + chunk, 1 << dim))
        e = (ids[:, None] >> np.arange(dim)[None, :]) & 1
        delta = c[None, :] - (base[None, :] + e)
        vals = np.einsum("ki,ij,kj->k", delta, gram, delta)
        k = int(np.argmin(vals))
        if vals[k] < best_val - 1e-12:
            best, best_val = base + e[k], vals[k]
    return best


def nearest_integer_solution(h, t: LineSumTable, S, m: int, n: int,
                             tol: float = COMPAT_TOL, max_dim: int = MAX_VERTEX_DIM) -> LatticeSolution:
    """Integer solution close to the real solution ``h``.

    Rounds the switching-basis coordinates of ``h`` relative to an integer
    solution; if that misses the guaranteed radius, searches the vertices of
    the lattice cell containing ``h``.
    """
    S = as_direction_set(S)
    h = as_grid(h)
    _check_anchor(h, t, S, tol)
    g = construct_integer_solution(t, S, m, n)
    basis = switching_basis(S, m, n)
    exact_mode = is_exact(h)
    diff = g.astype(object) - h if exact_mode else g - h.astype(float)
    found = decompose(diff, S, tol)
    coeffs = [found[o] for o in basis.offsets]
    bound_sq = distance_bound_sq(S, m, n)

    def at(k):
        f = g - basis.combine([int(x) for x in k])
        d = f.astype(object) - h if exact_mode else f - h.astype(float)
        return f, norm_sq(d)

    k = [_round_half(c) for c in coeffs]
    f, dist_sq = at(k)
    method = "babai_rounding"
    over = dist_sq > bound_sq if exact_mode else dist_sq > float(bound_sq) * (1 + 1e-12)
    if over:
        if basis.dim > max_dim:
            raise DimensionTooLarge(f"vertex search over 2^{basis.dim} points exceeds 2^{max_dim}")
        B = np.array([e.ravel() for e in basis.elements], dtype=float)
        cf = np.array([float(c) for c in coeffs])
        k = _nearest_vertex(B @ B.T, cf, np.floor(cf))
        f, dist_sq = at(k)
        method = "vertex_enumeration"
    return LatticeSolution(f, h, math.sqrt(dist_sq), dist_sq, math.sqrt(bound_sq), bound_sq, method)


def shortest_integer_candidate(f0, t: LineSumTable, S, m: int, n: int,
                               tol: float = COMPAT_TOL) -> LatticeSolution:
    """Integer solution near the projection; a candidate, not a certified shortest."""
    grid = f0.f0 if isinstance(f0, ProjectionResult) else f0
    sol = nearest_integer_solution(grid, t, S, m, n, tol)
    return LatticeSolution(sol.f, sol.anchor, sol.distance, sol.distance_sq, sol.bound,
                           sol.bound_sq, sol.method, candidate=True)


def cell_vertices(origin, edges):
    """All vertices ``origin + sum(e_k * edges[k])`` of a parallelepiped, ``e in {0,1}^d``."""
    origin = np.asarray(origin)
    for e in itertools.product((0, 1), repeat=len(edges)):
        yield origin + sum((ek * np.asarray(v) for ek, v in zip(e, edges)), np.zeros_like(origin))
