"""Line sums on the discrete torus ``(Z/nZ)^2``.

For pairwise independent directions every line of one direction meets every
line of another exactly once, which yields a closed-form projection.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import numpy as np

from .errors import DependentDirections, InconsistentTotals, NotAdmissible


def is_admissible(d, n: int) -> bool:
    a, b = d
    return 0 <= a < n and 0 <= b < n and math.gcd(a, b) == 1


def _check(d, n):
    if not is_admissible(d, n):
        raise NotAdmissible(f"direction {tuple(d)} is not admissible for n={n}")
    return (int(d[0]), int(d[1]))


def admissible_directions(n: int) -> list[tuple[int, int]]:
    return [(a, b) for a in range(n) for b in range(n) if math.gcd(a, b) == 1]


def torus_line(d, p, n: int) -> list[tuple[int, int]]:
    """The ``n`` points ``p + s*d (mod n)``, ``s = 0..n-1``."""
    a, b = _check(d, n)
    i, j = p
    return [((i + s * a) % n, (j + s * b) % n) for s in range(n)]


def are_independent(d1, d2, n: int) -> bool:
    (a, b), (c, d) = d1, d2
    return math.gcd(a * d - b * c, n) == 1


def line_labels(d, n: int) -> tuple[np.ndarray, list]:
    """Line number of every cell, and the representative point of each line.

    Representatives are taken greedily: the first cell, in lexicographic
    order, not yet covered by an earlier line.
    """
    d = _check(d, n)
    labels = np.full((n, n), -1, dtype=np.int64)
    reps = []
    for p in np.ndindex(n, n):
        if labels[p] >= 0:
            continue
        for q in torus_line(d, p, n):
            labels[q] = len(reps)
        reps.append(p)
    return labels, reps


def representatives(d, n: int) -> list:
    return line_labels(d, n)[1]


@dataclass(frozen=True)
class TorusInstance:
    n: int
    directions: tuple
    line_sums: dict
    total: object

    def __post_init__(self):
        dirs = tuple(_check(d, self.n) for d in self.directions)
        object.__setattr__(self, "directions", dirs)
        sums = {tuple(d): list(v) for d, v in self.line_sums.items()}
        for d in dirs:
            if len(sums.get(d, ())) != self.n:
                raise InconsistentTotals(f"direction {d} needs {self.n} line sums")
        object.__setattr__(self, "line_sums", sums)


def torus_line_sums(g, S) -> TorusInstance:
    g = np.asarray(g)
    n = g.shape[0]
    if g.shape != (n, n):
        raise ValueError(f"torus grids are square, got shape {g.shape}")
    sums = {}
    for d in S:
        labels, _ = line_labels(d, n)
        sums[_check(d, n)] = [_py(g[labels == t].sum()) for t in range(n)]
    return TorusInstance(n, tuple(sums), sums, _py(g.sum()))


def _py(x):
    return x.item() if isinstance(x, np.generic) else x


def torus_project(inst: TorusInstance) -> np.ndarray:
    """Shortest grid with the given torus line sums (pairwise independent directions).

    ``f0 = sum_d L_d(line through cell)/n - (k - 1) T / n^2``; exact when all
    sums are rational.
    """
    n, dirs = inst.n, inst.directions
    for x in range(len(dirs)):
        for y in range(x + 1, len(dirs)):
            if not are_independent(dirs[x], dirs[y], n):
                raise DependentDirections(f"{dirs[x]} and {dirs[y]} are not independent mod {n}")
    totals = {d: sum(inst.line_sums[d]) for d in dirs}
    if len(set(totals.values())) > 1:
        raise InconsistentTotals(f"line-sum totals differ between directions: {totals}")
    total = totals[dirs[0]] if dirs else inst.total
    exact_mode = all(isinstance(v, Rational) for d in dirs for v in inst.line_sums[d])
    conv = Fraction if exact_mode else float
    k = len(dirs)
    f0 = np.empty((n, n), dtype=object if exact_mode else float)
    f0[...] = -conv(k - 1) * conv(total) / (n * n)
    for d in dirs:
        labels, _ = line_labels(d, n)
        per = [conv(v) / n for v in inst.line_sums[d]]
        for p in np.ndindex(n, n):
            f0[p] += per[labels[p]]
    return f0
