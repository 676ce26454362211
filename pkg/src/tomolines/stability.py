"""Stability of binary solutions.

All binary solutions lie on a sphere around the projection ``f0`` of squared
radius ``D - |f0|^2``.  Comparing that radius with the cost of rounding
``f0`` bounds how many pixels any solution can get wrong.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .errors import EnumerationTruncated, NegativeRadicand, NegativeSlack
from .grid import LineSumTable, _table_vector, as_direction_set, line_index, validate_direction_set
from .projection import norm_sq

HALF = Fraction(1, 2)


class BinaryRadius(NamedTuple):
    radicand: object
    radius: float


class Rounding(NamedTuple):
    F: np.ndarray
    E: object
    ties: list


@dataclass(frozen=True)
class StabilityReport:
    F: np.ndarray
    D: object
    norm_sq_f0: object
    E: object
    slack: object
    b_list: list
    b_positions: list
    s: int
    t: int
    tie_positions: list

    @property
    def mn(self) -> int:
        return self.F.size


def _half(f0) -> object:
    return HALF if np.asarray(f0).dtype == object else 0.5


def binary_radius(norm_sq_f0, D) -> BinaryRadius:
    radicand = D - norm_sq_f0
    if radicand < 0:
        raise NegativeRadicand(f"D - |f0|^2 = {radicand} < 0: no binary solution")
    return BinaryRadius(radicand, math.sqrt(radicand))


def round_binary(f0) -> Rounding:
    """Round to the nearest 0/1 value; exact halves go to 1 and are reported."""
    f0 = np.asarray(f0)
    half = _half(f0)
    F = np.zeros(f0.shape, dtype=np.int64)
    ties = []
    E = 0 if f0.dtype == object else 0.0
    for (i, j), x in np.ndenumerate(f0):
        if x >= half:
            F[i, j] = 1
        if x == half:
            ties.append((i, j))
        E += min(abs(x), abs(1 - x)) ** 2
    return Rounding(F, E, ties)


def _max_prefix(values, budget) -> int:
    total, count = 0, 0
    for b in values:
        total += b
        if total > budget:
            break
        count += 1
    return count


def stability_bounds(f0, D) -> StabilityReport:
    """Rounded grid ``F`` with bounds ``s`` (solution vs F) and ``t`` (solution vs solution)."""
    f0 = np.asarray(f0)
    F, E, ties = round_binary(f0)
    nsq = norm_sq(f0)
    slack = D - E - nsq
    if slack < 0:
        raise NegativeSlack(f"D - E - |f0|^2 = {slack} < 0: no binary solution")
    ranked = sorted((abs(2 * x - 1), pos) for pos, x in np.ndenumerate(f0))
    b_list = [b for b, _ in ranked]
    s = _max_prefix(b_list, slack)
    t = _max_prefix(b_list, 2 * slack)
    return StabilityReport(F, D, nsq, E, slack, b_list, [tuple(map(int, p)) for _, p in ranked],
                           s, t, [tuple(map(int, p)) for p in ties])


@dataclass
class Enumeration:
    solutions: list
    truncated: bool

    def __iter__(self):
        return iter(self.solutions)

    def __len__(self):
        return len(self.solutions)


def enumerate_binary_solutions(t: LineSumTable, S, m: int, n: int, cap: int = 10000) -> Enumeration:
    """All 0/1 grids with line sums ``t``, in lexicographic order of the flattened grid.

    Depth-first over cells in ``(i, j)`` order, pruning any line whose
    partial sum overshoots or can no longer reach its target.
    """
    S = as_direction_set(S)
    validate_direction_set(S, m, n)
    vec = _table_vector(t, S, m, n)
    if any(v != int(v) or v < 0 for v in vec):
        return Enumeration([], False)
    need = [int(v) for v in vec]
    index, n_lines = line_index(S, m, n)
    cells = [tuple(int(x) for x in index[:, c]) for c in range(m * n)]
    free = [0] * n_lines
    for lines in cells:
        for ln in lines:
            free[ln] += 1
    for ln in range(n_lines):
        if need[ln] > free[ln]:
            return Enumeration([], False)

    values = [0] * (m * n)
    out = []
    truncated = False

    def dfs(c):
        nonlocal truncated
        if c == m * n:
            out.append(np.array(values, dtype=np.int64).reshape(m, n))
            if len(out) >= cap:
                truncated = True
            return
        lines = cells[c]
        for ln in lines:
            free[ln] -= 1
        # value 0 keeps need, value 1 lowers it; feasible iff 0 <= need' <= free'
        if all(need[ln] <= free[ln] for ln in lines):
            values[c] = 0
            dfs(c + 1)
        if not truncated and all(need[ln] >= 1 for ln in lines):
            for ln in lines:
                need[ln] -= 1
            values[c] = 1
            dfs(c + 1)
            for ln in lines:
                need[ln] += 1
        values[c] = 0
        for ln in lines:
            free[ln] += 1

    if cap > 0:
        dfs(0)
    if truncated:
        warnings.warn(f"binary enumeration stopped at cap={cap}", EnumerationTruncated, stacklevel=2)
    return Enumeration(out, truncated)
