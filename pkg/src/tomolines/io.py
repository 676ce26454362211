"""JSON encoding of instances, grids and exact values.

Rationals are written as ``"p/q"`` strings, integers as JSON integers and
floats rounded to 12 significant digits.  Grids are lists of rows, row
``j = 0`` first.
"""
from __future__ import annotations

import json
from fractions import Fraction
from numbers import Integral

import numpy as np

from .grid import DirectionSet, LineSumTable, as_direction_set, simple_line_sums, to_rows
from .torus import TorusInstance


def encode_value(x):
    if isinstance(x, (bool, np.bool_)):
        return int(x)
    if isinstance(x, Integral):
        return int(x)
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    x = float(x)
    return float(f"{x:.12g}")


def decode_value(x):
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        q = Fraction(x)
        return q.numerator if q.denominator == 1 else q
    if isinstance(x, float):
        return x
    raise ValueError(f"cannot decode value {x!r}")


def encode_grid(g) -> list:
    return [[encode_value(v) for v in row] for row in to_rows(g)]


def decode_grid(rows) -> np.ndarray:
    vals = [[decode_value(v) for v in row] for row in rows]
    if not vals or any(len(r) != len(vals[0]) for r in vals):
        raise ValueError("grid rows must be non-empty and of equal length")
    flat = [v for r in vals for v in r]
    if all(isinstance(v, int) for v in flat):
        g = np.array(vals, dtype=np.int64)
    elif any(isinstance(v, float) for v in flat):
        g = np.array(vals, dtype=float)
    else:
        g = np.empty((len(vals), len(vals[0])), dtype=object)
        for j, r in enumerate(vals):
            for i, v in enumerate(r):
                g[j, i] = v
    return g.T


def decode_instance(obj: dict):
    """Return ``(m, n, S, table)`` from either instance layout."""
    if "row_sums" in obj:
        rows = [decode_value(v) for v in obj["row_sums"]]
        cols = [decode_value(v) for v in obj["col_sums"]]
        m = int(obj.get("m", len(cols)))
        n = int(obj.get("n", len(rows)))
        if (m, n) != (len(cols), len(rows)):
            raise ValueError(f"m={m}, n={n} disagree with {len(cols)} column and {len(rows)} row sums")
        return m, n, DirectionSet.simple(), simple_line_sums(rows, cols)
    m, n = int(obj["m"]), int(obj["n"])
    S = DirectionSet(tuple(tuple(d) for d in obj["directions"]))
    sums = {}
    for d in S:
        per = obj["line_sums"].get(d.key)
        if per is None:
            raise ValueError(f"no line sums for direction {d.key}")
        sums[d] = {int(t): decode_value(v) for t, v in per.items()}
    return m, n, S, LineSumTable.from_dict(sums)


def encode_instance(m: int, n: int, S, table: LineSumTable) -> dict:
    S = as_direction_set(S)
    return {
        "m": m,
        "n": n,
        "directions": [[d.a, d.b] for d in S],
        "line_sums": {d.key: {str(t): encode_value(v) for t, v in sorted(table.sums[d].items())}
                      for d in S},
    }


def encode_torus_instance(inst) -> dict:
    return {
        "n": inst.n,
        "directions": [list(d) for d in inst.directions],
        "line_sums": {f"{a},{b}": [encode_value(v) for v in inst.line_sums[(a, b)]]
                      for a, b in inst.directions},
    }


def decode_torus_instance(obj: dict):
    n = int(obj["n"])
    dirs = tuple(tuple(int(x) for x in d) for d in obj["directions"])
    sums = {d: [decode_value(v) for v in obj["line_sums"][f"{d[0]},{d[1]}"]] for d in dirs}
    total = sum(sums[dirs[0]]) if dirs else 0
    return TorusInstance(n, dirs, sums, total)


def dumps(obj) -> str:
    return json.dumps(obj, separators=(", ", ": "))

