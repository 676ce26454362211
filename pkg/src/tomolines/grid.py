"""Grids, directions and line sums on the rectangle ``0 <= i < m, 0 <= j < n``.

A grid is a numpy array of shape ``(m, n)`` indexed ``g[i, j]`` with ``i``
the column and ``j`` the row.  Flattening with ``ravel()`` therefore lists
the cells in lexicographic order of ``(i, j)``.  Exact grids use object
dtype holding ``int``/``Fraction`` entries.

A line in direction ``(a, b)`` is the set ``a*j - b*i == t``; lines are keyed
by ``t`` and always listed in increasing ``t``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from numbers import Rational

import numpy as np

from . import exact
from .errors import IncompatibleLineSums, InvalidDirectionSet, MalformedDirection

COMPAT_TOL = 1e-8


@dataclass(frozen=True, order=True)
class Direction:
    a: int
    b: int

    def __post_init__(self):
        if not all(isinstance(v, (int, np.integer)) and not isinstance(v, bool)
                   for v in (self.a, self.b)):
            raise MalformedDirection(f"direction components must be integers: {(self.a, self.b)}")
        object.__setattr__(self, "a", int(self.a))
        object.__setattr__(self, "b", int(self.b))
        if math.gcd(self.a, self.b) != 1:
            raise MalformedDirection(f"gcd{(self.a, self.b)} != 1")
        if self.a < 0 or (self.a == 0 and self.b != 1):
            raise MalformedDirection(f"{(self.a, self.b)} violates a >= 0 and (a == 0 => b == 1)")

    @property
    def key(self) -> str:
        return f"{self.a},{self.b}"

    @classmethod
    def parse(cls, text: str) -> "Direction":
        a, b = text.split(",")
        return cls(int(a), int(b))

    def __iter__(self):
        return iter((self.a, self.b))


def _as_direction(d) -> Direction:
    return d if isinstance(d, Direction) else Direction(*d)


@dataclass(frozen=True)
class DirectionSet:
    """An ordered collection of distinct directions."""

    directions: tuple = field(default_factory=tuple)

    def __post_init__(self):
        dirs = tuple(_as_direction(d) for d in self.directions)
        if len(set(dirs)) != len(dirs):
            raise InvalidDirectionSet("directions must be pairwise distinct")
        object.__setattr__(self, "directions", dirs)

    @classmethod
    def simple(cls) -> "DirectionSet":
        """Rows and columns only."""
        return cls(((1, 0), (0, 1)))

    @property
    def k(self) -> int:
        return len(self.directions)

    @property
    def M(self) -> int:
        return sum(d.a for d in self.directions)

    @property
    def N(self) -> int:
        return sum(abs(d.b) for d in self.directions)

    @property
    def is_simple(self) -> bool:
        return set(self.directions) == {Direction(1, 0), Direction(0, 1)}

    def is_valid(self, m: int, n: int) -> bool:
        return self.M < m and self.N < n

    def __iter__(self):
        return iter(self.directions)

    def __len__(self):
        return len(self.directions)


def as_direction_set(S) -> DirectionSet:
    return S if isinstance(S, DirectionSet) else DirectionSet(tuple(S))


def validate_direction_set(S, m: int, n: int) -> tuple[int, int]:
    """Return ``(M, N)`` or raise InvalidDirectionSet."""
    S = as_direction_set(S)
    if m < 1 or n < 1:
        raise InvalidDirectionSet(f"grid dimensions must be positive, got {m}x{n}")
    if not S.directions:
        raise InvalidDirectionSet("empty direction set")
    if not S.is_valid(m, n):
        raise InvalidDirectionSet(
            f"direction set not valid for {m}x{n}: M={S.M}, N={S.N} (need M < m and N < n)")
    return S.M, S.N


# -- grids -------------------------------------------------------------------

def as_grid(values) -> np.ndarray:
    g = np.asarray(values)
    if g.ndim != 2 or 0 in g.shape:
        raise ValueError(f"grid must be a non-empty 2-d array, got shape {g.shape}")
    if g.dtype != object and not np.all(np.isfinite(g)):
        raise ValueError("grid entries must be finite")
    return g


def from_rows(rows, exact_values: bool = False) -> np.ndarray:
    """Build a grid from row-major data, row ``j = 0`` first."""
    g = np.asarray(rows, dtype=object if exact_values else None).T
    if exact_values:
        g = to_exact(g)
    return as_grid(g)


def to_rows(g) -> list:
    return np.asarray(g).T.tolist()


def to_exact(g) -> np.ndarray:
    g = np.asarray(g)
    out = np.empty(g.shape, dtype=object)
    for idx, v in np.ndenumerate(g):
        out[idx] = exact.to_fraction(v)
    return out


def scalar_kind(g) -> str:
    g = np.asarray(g)
    if g.dtype == object:
        if all(isinstance(v, Rational) for v in g.flat):
            if all(v == int(v) for v in g.flat):
                return "binary" if all(v in (0, 1) for v in g.flat) else "integer"
            return "rational"
        return "float"
    if np.issubdtype(g.dtype, np.integer) or g.dtype == bool:
        return "binary" if np.isin(g, (0, 1)).all() else "integer"
    return "float"


def is_exact(g) -> bool:
    return scalar_kind(g) != "float"


def _py(x):
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.floating):
        return float(x)
    return x


# -- lines -------------------------------------------------------------------

def line_keys(d, m: int, n: int) -> np.ndarray:
    """Array of shape (m, n) holding the line key ``a*j - b*i`` of every cell."""
    d = _as_direction(d)
    i, j = np.meshgrid(np.arange(m), np.arange(n), indexing="ij")
    return d.a * j - d.b * i


def line_values(d, m: int, n: int) -> list[int]:
    return [int(t) for t in np.unique(line_keys(d, m, n))]


def line_index(S, m: int, n: int) -> tuple[np.ndarray, int]:
    """Map each cell to the global number of its line, per direction.

    Returns ``(index, n_lines)`` where ``index`` has shape ``(k, m*n)``; lines
    are numbered direction by direction, in increasing key order.
    """
    S = as_direction_set(S)
    rows = []
    offset = 0
    for d in S:
        keys = line_keys(d, m, n).ravel()
        _, inv = np.unique(keys, return_inverse=True)
        rows.append(inv + offset)
        offset += int(inv.max()) + 1
    return np.array(rows), offset


def line_sum_matrix(S, m: int, n: int) -> np.ndarray:
    """Dense 0/1 matrix of the line-sum operator (lines x cells)."""
    index, n_lines = line_index(S, m, n)
    mat = np.zeros((n_lines, m * n), dtype=np.int64)
    for row in index:
        mat[row, np.arange(m * n)] = 1
    return mat


@dataclass(frozen=True)
class LineSumTable:
    """Line sums per direction, ``sums[d][t]``, plus the grid total."""

    sums: dict
    total: object

    def __getitem__(self, d):
        return self.sums[_as_direction(d)]

    @property
    def directions(self) -> DirectionSet:
        return DirectionSet(tuple(self.sums))

    def vector(self, S=None) -> list:
        S = self.directions if S is None else as_direction_set(S)
        return [v for d in S for _, v in sorted(self.sums[d].items())]

    def is_exact(self) -> bool:
        return all(isinstance(v, Rational) for v in self._values())

    def is_integral(self) -> bool:
        return self.is_exact() and all(v == int(v) for v in self._values())

    def _values(self):
        for per in self.sums.values():
            yield from per.values()

    @classmethod
    def from_dict(cls, sums: dict) -> "LineSumTable":
        """Build from ``{direction: {t: value}}``; the total is taken from the first direction."""
        sums = {_as_direction(d): {int(t): v for t, v in per.items()} for d, per in sums.items()}
        first = next(iter(sums.values()), {})
        return cls(sums, _py(sum(first.values())))

    def row_sums(self) -> list:
        """Row sums ``r_j``, ``j = 0..n-1`` (direction (1, 0))."""
        per = self[(1, 0)]
        return [per[t] for t in sorted(per)]

    def col_sums(self) -> list:
        """Column sums ``c_i``, ``i = 0..m-1`` (direction (0, 1) keys ``t = -i``)."""
        per = self[(0, 1)]
        return [per[t] for t in sorted(per, reverse=True)]


def simple_line_sums(row_sums, col_sums) -> LineSumTable:
    """Table for the rows/columns case; ``len(col_sums) = m``, ``len(row_sums) = n``."""
    rows = {j: _py(v) for j, v in enumerate(row_sums)}
    cols = {-i: _py(v) for i, v in enumerate(col_sums)}
    return LineSumTable({Direction(1, 0): rows, Direction(0, 1): cols}, _py(sum(row_sums)))


def compute_line_sums(g, S) -> LineSumTable:
    g = as_grid(g)
    S = as_direction_set(S)
    m, n = g.shape
    validate_direction_set(S, m, n)
    sums = {}
    for d in S:
        keys = line_keys(d, m, n)
        sums[d] = {int(t): _py(g[keys == t].sum()) for t in np.unique(keys)}
    return LineSumTable(sums, _py(g.sum()))


def dependency_count(S, m: int, n: int) -> int:
    """Number of independent linear relations among the line sums."""
    S = as_direction_set(S)
    M, N = validate_direction_set(S, m, n)
    return M * N - sum(d.a * abs(d.b) for d in S)


def _check_table_shape(t: LineSumTable, S: DirectionSet, m: int, n: int):
    for d in S:
        if d not in t.sums:
            raise IncompatibleLineSums(f"missing line sums for direction {d.key}")
        expected = set(line_values(d, m, n))
        extra = set(t.sums[d]) - expected
        if extra:
            raise IncompatibleLineSums(
                f"direction {d.key}: lines {sorted(extra)} do not meet the {m}x{n} grid")


def _table_vector(t: LineSumTable, S: DirectionSet, m: int, n: int) -> list:
    """Line-sum vector in ``line_index`` order; absent lines count as 0."""
    _check_table_shape(t, S, m, n)
    return [t.sums[d].get(tv, 0) for d in S for tv in line_values(d, m, n)]


@lru_cache(maxsize=256)
def _exact_system(S: DirectionSet, m: int, n: int):
    """Row reduction of ``[L | I]`` done once per ``(S, m, n)``.

    Returns ``(pivots, solve_rows, deps, deps_gram_inv)``: a particular
    solution has ``x[pivots[r]] = solve_rows[r] . t``, and the rows of
    ``deps`` span the left null space of ``L``.
    """
    L = line_sum_matrix(S, m, n).tolist()
    ncols = m * n
    aug = [row + [1 if k == r else 0 for k in range(len(L))] for r, row in enumerate(L)]
    R, piv = exact.rref(aug)
    pivots = [p for p in piv if p < ncols]
    rank = len(pivots)
    E = [row[ncols:] for row in R]
    deps = E[rank:]
    ginv = exact.inverse([[exact.dot(a, b) for b in deps] for a in deps]) if deps else []
    return tuple(pivots), E[:rank], deps, ginv


def _exact_residual_sq(S: DirectionSet, m: int, n: int, vec: list) -> Fraction:
    # squared length of the component of vec in the left null space of L
    _, _, deps, ginv = _exact_system(S, m, n)
    rhs = [exact.dot(w, vec) for w in deps]
    return exact.dot(rhs, exact.matvec(ginv, rhs))


def check_compatibility(t: LineSumTable, S, m: int, n: int) -> float:
    """Distance between the given line sums and the nearest attainable ones.

    Computed exactly (then square-rooted) when the sums are rational.
    """
    S = as_direction_set(S)
    validate_direction_set(S, m, n)
    vec = _table_vector(t, S, m, n)
    if t.is_exact():
        return math.sqrt(_exact_residual_sq(S, m, n, [exact.to_fraction(v) for v in vec]))
    L = line_sum_matrix(S, m, n)
    b = np.asarray(vec, dtype=float)
    x, *_ = np.linalg.lstsq(L.astype(float), b, rcond=None)
    return float(np.linalg.norm(L @ x - b))


def is_compatible(t: LineSumTable, S, m: int, n: int, tol: float = COMPAT_TOL) -> bool:
    S = as_direction_set(S)
    if t.is_exact():
        validate_direction_set(S, m, n)
        vec = [exact.to_fraction(v) for v in _table_vector(t, S, m, n)]
        _, _, deps, _ = _exact_system(S, m, n)
        return all(exact.dot(w, vec) == 0 for w in deps)
    return check_compatibility(t, S, m, n) <= tol


def particular_solution(t: LineSumTable, S, m: int, n: int, tol: float = COMPAT_TOL) -> np.ndarray:
    """Some grid with line sums ``t``: exact when ``t`` is rational, else least squares."""
    S = as_direction_set(S)
    validate_direction_set(S, m, n)
    vec = _table_vector(t, S, m, n)
    if t.is_exact():
        vec = [exact.to_fraction(v) for v in vec]
        pivots, solve_rows, deps, _ = _exact_system(S, m, n)
        if any(exact.dot(w, vec) != 0 for w in deps):
            raise IncompatibleLineSums("line sums admit no real solution")
        g = np.empty(m * n, dtype=object)
        g[:] = Fraction(0)
        for pc, row in zip(pivots, solve_rows):
            g[pc] = exact.dot(row, vec)
        return g.reshape(m, n)
    L = line_sum_matrix(S, m, n)
    b = np.asarray(vec, dtype=float)
    x, *_ = np.linalg.lstsq(L.astype(float), b, rcond=None)
    residual = float(np.linalg.norm(L @ x - b))
    if residual > tol:
        raise IncompatibleLineSums(f"line sums admit no real solution (residual {residual:.3g})")
    return x.reshape(m, n)


def hamming(g1, g2) -> int:
    return int(np.count_nonzero(np.asarray(g1) != np.asarray(g2)))
