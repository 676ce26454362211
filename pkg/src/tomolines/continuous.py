"""Row and column integrals on ``T = [0, m] x [0, n]`` for unions of rectangles.

Everything is piecewise constant with rational breakpoints, so integrals,
the projection and inner products are all exact ``Fraction`` values.
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import OverlappingRectangles


def _q(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class StepProfile:
    """Piecewise-constant function; ``values[k]`` holds on ``[breakpoints[k], breakpoints[k+1])``."""

    breakpoints: tuple
    values: tuple

    def __post_init__(self):
        bp = tuple(_q(x) for x in self.breakpoints)
        vals = tuple(_q(v) for v in self.values)
        if len(bp) != len(vals) + 1 or any(a >= b for a, b in zip(bp, bp[1:])):
            raise ValueError("breakpoints must be increasing with one more entry than values")
        object.__setattr__(self, "breakpoints", bp)
        object.__setattr__(self, "values", vals)

    @classmethod
    def constant(cls, lo, hi, value) -> "StepProfile":
        return cls((lo, hi), (value,))

    @property
    def lo(self):
        return self.breakpoints[0]

    @property
    def hi(self):
        return self.breakpoints[-1]

    def __call__(self, x):
        x = _q(x)
        if x < self.lo or x > self.hi:
            return Fraction(0)
        k = min(bisect_right(self.breakpoints, x) - 1, len(self.values) - 1)
        return self.values[k]

    def refine(self, points) -> "StepProfile":
        pts = sorted({*self.breakpoints, *(_q(p) for p in points if self.lo <= p <= self.hi)})
        return StepProfile(pts, [self((a + b) / 2) for a, b in zip(pts, pts[1:])])

    def _merged(self, other):
        pts = sorted({*self.breakpoints, *other.breakpoints})
        return [(a, b, (a + b) / 2) for a, b in zip(pts, pts[1:])]

    def __add__(self, other):
        if not isinstance(other, StepProfile):
            other = StepProfile.constant(self.lo, self.hi, other)
        pieces = self._merged(other)
        return StepProfile([pieces[0][0]] + [b for _, b, _ in pieces],
                           [self(c) + other(c) for _, _, c in pieces])

    def scale(self, factor) -> "StepProfile":
        return StepProfile(self.breakpoints, [v * _q(factor) for v in self.values])

    def integral(self, lo=None, hi=None) -> Fraction:
        lo = self.lo if lo is None else _q(lo)
        hi = self.hi if hi is None else _q(hi)
        total = Fraction(0)
        for a, b, v in zip(self.breakpoints, self.breakpoints[1:], self.values):
            a, b = max(a, lo), min(b, hi)
            if b > a:
                total += v * (b - a)
        return total

    def dot(self, other: "StepProfile") -> Fraction:
        """``integral of self * other`` over the common support."""
        return sum((self(c) * other(c) * (b - a) for a, b, c in self._merged(other)), Fraction(0))

    def equals_on(self, other: "StepProfile") -> bool:
        """Pointwise equality on every piece of the merged partition."""
        return (self.lo, self.hi) == (other.lo, other.hi) and all(
            self(c) == other(c) for _, _, c in self._merged(other))


@dataclass(frozen=True)
class RectUnion:
    """Interior-disjoint rectangles ``(x1, y1, x2, y2)`` inside ``[0, m] x [0, n]``."""

    m: Fraction
    n: Fraction
    rects: tuple = field(default_factory=tuple)

    def __post_init__(self):
        m, n = _q(self.m), _q(self.n)
        rects = tuple(tuple(_q(v) for v in r) for r in self.rects)
        for x1, y1, x2, y2 in rects:
            if not (0 <= x1 < x2 <= m and 0 <= y1 < y2 <= n):
                raise ValueError(f"rectangle {(x1, y1, x2, y2)} is degenerate or outside T")
        for p in range(len(rects)):
            for q in range(p + 1, len(rects)):
                a, b = rects[p], rects[q]
                if min(a[2], b[2]) > max(a[0], b[0]) and min(a[3], b[3]) > max(a[1], b[1]):
                    raise OverlappingRectangles(f"rectangles {a} and {b} overlap")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rects", rects)

    @property
    def measure(self) -> Fraction:
        return sum(((x2 - x1) * (y2 - y1) for x1, y1, x2, y2 in self.rects), Fraction(0))

    @classmethod
    def from_binary_grid(cls, g) -> "RectUnion":
        """Unit cells ``[i, i+1] x [j, j+1]`` for every ``g[i, j] == 1``."""
        m, n = len(g), len(g[0])
        cells = [(i, j, i + 1, j + 1) for i in range(m) for j in range(n) if g[i][j]]
        return cls(m, n, cells)

    def as_test_function(self) -> "SeparableTestFn":
        """The characteristic function as a sum of separable indicator products."""
        terms = []
        for x1, y1, x2, y2 in self.rects:
            terms.append((_indicator(x1, x2, self.m), _indicator(y1, y2, self.n)))
        return SeparableTestFn(tuple(terms))


def _indicator(lo, hi, length) -> StepProfile:
    pts = sorted({Fraction(0), lo, hi, _q(length)})
    return StepProfile(pts, [1 if lo <= a and b <= hi else 0 for a, b in zip(pts, pts[1:])])


def _marginal(intervals, weights, length) -> StepProfile:
    pts = sorted({Fraction(0), _q(length), *(p for iv in intervals for p in iv)})
    vals = []
    for a, b in zip(pts, pts[1:]):
        vals.append(sum((w for (lo, hi), w in zip(intervals, weights) if lo <= a and b <= hi),
                        Fraction(0)))
    return StepProfile(pts, vals)


def profiles(A: RectUnion):
    """Column integrals ``c(x)``, row integrals ``r(y)`` and the measure of ``A``."""
    xs = [(x1, x2) for x1, _, x2, _ in A.rects]
    ys = [(y1, y2) for _, y1, _, y2 in A.rects]
    col = _marginal(xs, [y2 - y1 for _, y1, _, y2 in A.rects], A.m)
    row = _marginal(ys, [x2 - x1 for x1, _, x2, _ in A.rects], A.n)
    return col, row, A.measure


@dataclass(frozen=True)
class SeparableTestFn:
    """Finite sum of products ``u(x) * v(y)``."""

    terms: tuple

    def __call__(self, x, y):
        return sum((u(x) * v(y) for u, v in self.terms), Fraction(0))

    def column_integrals(self, n) -> StepProfile:
        out = None
        for u, v in self.terms:
            piece = u.scale(v.integral(0, n))
            out = piece if out is None else out + piece
        return out

    def row_integrals(self, m) -> StepProfile:
        out = None
        for u, v in self.terms:
            piece = v.scale(u.integral(0, m))
            out = piece if out is None else out + piece
        return out


@dataclass(frozen=True)
class SeparableF0:
    """``f0(x, y) = col_profile(x) + row_profile(y) + constant``."""

    col_profile: StepProfile
    row_profile: StepProfile
    constant: Fraction
    m: Fraction
    n: Fraction

    def __call__(self, x, y):
        return self.col_profile(x) + self.row_profile(y) + self.constant

    def as_test_function(self) -> SeparableTestFn:
        one_x = StepProfile.constant(0, self.m, 1)
        one_y = StepProfile.constant(0, self.n, 1)
        return SeparableTestFn(((self.col_profile, one_y), (one_x, self.row_profile),
                                (one_x.scale(self.constant), one_y)))

    def column_integrals(self) -> StepProfile:
        return self.as_test_function().column_integrals(self.n)

    def row_integrals(self) -> StepProfile:
        return self.as_test_function().row_integrals(self.m)


def continuous_project(A: RectUnion) -> SeparableF0:
    """Shortest function with the same row and column integrals as the indicator of ``A``."""
    col, row, lam = profiles(A)
    return SeparableF0(col.scale(1 / A.n), row.scale(1 / A.m), -lam / (A.m * A.n), A.m, A.n)


def inner_product(f, h) -> Fraction:
    """Exact ``integral over T of f * h`` for separable ``f`` and ``h``."""
    if isinstance(f, SeparableF0):
        f = f.as_test_function()
    if isinstance(h, SeparableF0):
        h = h.as_test_function()
    return sum((u1.dot(u2) * v1.dot(v2) for u1, v1 in f.terms for u2, v2 in h.terms), Fraction(0))
