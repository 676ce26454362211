"""Small exact linear algebra over the rationals.

Matrices are lists of rows; entries are converted to ``Fraction`` on entry.
Sizes here are a few dozen rows at most, so plain Gauss-Jordan is fine.
"""
from fractions import Fraction


def to_fraction(x):
    return x if isinstance(x, Fraction) else Fraction(x)


def _matrix(rows):
    return [[to_fraction(x) for x in row] for row in rows]


def rref(rows):
    """Reduced row echelon form. Returns ``(R, pivot_columns)``."""
    a = _matrix(rows)
    if not a:
        return a, []
    nrows, ncols = len(a), len(a[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((k for k in range(r, nrows) if a[k][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        a[r] = [x / piv for x in a[r]]
        for k in range(nrows):
            if k != r and a[k][c] != 0:
                f = a[k][c]
                a[k] = [x - f * y for x, y in zip(a[k], a[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return a, pivots


def rank(rows):
    return len(rref(rows)[1])


def nullspace(rows, ncols=None):
    """Basis (list of vectors) of ``{x : rows @ x = 0}``."""
    if ncols is None:
        ncols = len(rows[0])
    r, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * ncols
        v[fcol] = Fraction(1)
        for row, pc in zip(r, pivots):
            v[pc] = -row[fcol]
        basis.append(v)
    return basis


def solve(rows, rhs):
    """One exact solution of ``rows @ x = rhs`` (free variables set to 0).

    Returns None when the system is inconsistent.
    """
    ncols = len(rows[0])
    aug = [list(row) + [b] for row, b in zip(rows, rhs)]
    r, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, pc in zip(r, pivots):
        x[pc] = row[ncols]
    return x


def inverse(rows):
    """Inverse of a nonsingular square matrix."""
    size = len(rows)
    aug = [list(row) + [1 if k == r else 0 for k in range(size)] for r, row in enumerate(rows)]
    r, pivots = rref(aug)
    if pivots[:size] != list(range(size)):
        raise ZeroDivisionError("matrix is singular")
    return [row[size:] for row in r]


def transpose(rows):
    return [list(col) for col in zip(*rows)]


def matvec(rows, v):
    return [sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in rows]


def dot(u, v):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))
