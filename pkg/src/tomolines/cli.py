"""Command-line front end.

Exit codes: 0 success, 1 domain error (JSON error object on stdout),
2 unreadable input or bad arguments.
"""
from __future__ import annotations

import argparse
import csv
import io as _io
import json
import sys
from fractions import Fraction

import numpy as np

from . import io
from .continuous import RectUnion, continuous_project, profiles
from .errors import TomographyError
from .grid import COMPAT_TOL, DirectionSet, compute_line_sums
from .lattice import shortest_integer_candidate
from .projection import project
from .stability import binary_radius, enumerate_binary_solutions, stability_bounds
from .torus import torus_project

EXAMPLE_ROWS = (5, 4, 3, 2, 1)
EXAMPLE_COLS = (4, 4, 3, 2, 1, 1)


class InputError(Exception):
    pass


def _load(path: str):
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(str(exc)) from exc


def _decode(fn, obj):
    try:
        return fn(obj)
    except TomographyError:
        raise
    except (KeyError, TypeError, ValueError, IndexError, ZeroDivisionError) as exc:
        raise InputError(f"malformed input: {exc!r}") from exc


def _grid_csv(rows) -> str:
    buf = _io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue().rstrip("\n")


def _emit(args, payload: dict, grid_key: str | None = None) -> str:
    if args.format == "csv" and grid_key is not None:
        return _grid_csv(payload[grid_key])
    return io.dumps(payload)


def cmd_sums(args):
    obj = _load(args.input)

    def parse(o):
        g = io.decode_grid(o["grid"])
        S = DirectionSet(tuple(tuple(d) for d in o.get("directions", [[1, 0], [0, 1]])))
        return g, S

    g, S = _decode(parse, obj)
    m, n = g.shape
    return io.dumps(io.encode_instance(m, n, S, compute_line_sums(g, S)))


def cmd_project(args):
    m, n, S, t = _decode(io.decode_instance, _load(args.input))
    res = project(t, S, m, n, args.tolerance)
    payload = {"method": res.method, "f0": io.encode_grid(res.f0),
               "norm_sq": io.encode_value(res.norm_sq), "residual": io.encode_value(res.residual)}
    return _emit(args, payload, "f0")


def cmd_stability(args):
    m, n, S, t = _decode(io.decode_instance, _load(args.input))
    res = project(t, S, m, n, args.tolerance)
    rep = stability_bounds(res.f0, t.total)
    payload = {
        "D": io.encode_value(rep.D), "norm_sq_f0": io.encode_value(rep.norm_sq_f0),
        "E": io.encode_value(rep.E), "slack": io.encode_value(rep.slack),
        "s": rep.s, "t": rep.t, "ties": len(rep.tie_positions), "F": io.encode_grid(rep.F),
    }
    return _emit(args, payload, "F")


def cmd_enumerate(args):
    m, n, S, t = _decode(io.decode_instance, _load(args.input))
    result = enumerate_binary_solutions(t, S, m, n, cap=args.cap)
    lines = [io.dumps({"grid": io.encode_grid(g)}) for g in result]
    if result.truncated:
        print(f"truncated at cap={args.cap}", file=sys.stderr)
    return "\n".join(lines)


def cmd_intsolve(args):
    m, n, S, t = _decode(io.decode_instance, _load(args.input))
    res = project(t, S, m, n, args.tolerance)
    sol = shortest_integer_candidate(res, t, S, m, n, args.tolerance)
    payload = {"grid": io.encode_grid(sol.f), "distance": io.encode_value(sol.distance),
               "distance_sq": io.encode_value(sol.distance_sq), "bound": io.encode_value(sol.bound),
               "method": sol.method}
    return _emit(args, payload, "grid")


def cmd_torus_project(args):
    inst = _decode(io.decode_torus_instance, _load(args.input))
    f0 = torus_project(inst)
    return _emit(args, {"n": inst.n, "f0": io.encode_grid(f0)}, "f0")


def _profile_json(p):
    return {"breakpoints": [io.encode_value(b) for b in p.breakpoints],
            "values": [io.encode_value(v) for v in p.values]}


def cmd_continuous_project(args):
    obj = _load(args.input)

    def parse(o):
        rects = [(Fraction(x1), Fraction(y1), Fraction(x2), Fraction(y2))
                 for x1, y1, x2, y2 in (map(io.decode_value, r) for r in o["rects"])]
        return RectUnion(Fraction(io.decode_value(o["m"])), Fraction(io.decode_value(o["n"])), rects)

    A = _decode(parse, obj)
    f0 = continuous_project(A)
    measure = profiles(A)[2]
    return io.dumps({"col_profile": _profile_json(f0.col_profile),
                     "row_profile": _profile_json(f0.row_profile),
                     "constant": io.encode_value(f0.constant),
                     "measure": io.encode_value(measure)})


def cmd_paper_example(args):
    res = project(*_example_instance())
    rep = stability_bounds(res.f0, sum(EXAMPLE_ROWS))
    radius = binary_radius(res.norm_sq, sum(EXAMPLE_ROWS))
    payload = {
        "f0_times_30": io.encode_grid(np.vectorize(lambda x: x * 30, otypes=[object])(res.f0)),
        "F": io.encode_grid(rep.F),
        "norm_sq_f0": io.encode_value(res.norm_sq), "E": io.encode_value(rep.E),
        "slack": io.encode_value(rep.slack), "s": rep.s, "t": rep.t,
        "radicand": io.encode_value(radius.radicand),
    }
    return _emit(args, payload, "f0_times_30")


def _example_instance():
    m, n, S, t = io.decode_instance({"row_sums": list(EXAMPLE_ROWS), "col_sums": list(EXAMPLE_COLS)})
    return t, S, m, n


COMMANDS = {
    "sums": (cmd_sums, "line sums of a grid -> instance JSON"),
    "project": (cmd_project, "minimum-norm real solution f0"),
    "stability": (cmd_stability, "rounding, E, slack and the s/t bounds"),
    "enumerate": (cmd_enumerate, "all binary solutions as JSON lines"),
    "intsolve": (cmd_intsolve, "integer solution near f0 with its distance bound"),
    "torus-project": (cmd_torus_project, "closed-form projection on the torus"),
    "continuous-project": (cmd_continuous_project, "projection for a union of rectangles"),
    "paper-example": (cmd_paper_example, "worked 6x5 row/column example end to end"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", default="-", help="output path (default stdout)")
    common.add_argument("--format", choices=("json", "csv"), default="json",
                        help="csv writes only the main grid")
    common.add_argument("--tolerance", type=float, default=COMPAT_TOL,
                        help="compatibility tolerance on the float path")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for randomized tooling (no command is randomized yet)")
    parser = argparse.ArgumentParser(prog="tomolines", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (fn, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        if name != "paper-example":
            p.add_argument("input", nargs="?", default="-", help="input JSON (default stdin)")
        if name == "enumerate":
            p.add_argument("--cap", type=int, default=10000, help="stop after this many solutions")
        p.set_defaults(func=fn)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out = args.func(args)
    except InputError as exc:
        print(io.dumps({"error": "input_error", "detail": str(exc)}), file=sys.stderr)
        return 2
    except TomographyError as exc:
        print(io.dumps({"error": exc.code, "detail": str(exc)}))
        return 1
    try:
        if args.output == "-":
            print(out)
        else:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(out + "\n")
    except OSError as exc:
        print(io.dumps({"error": "output_error", "detail": str(exc)}), file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
