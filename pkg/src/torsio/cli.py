"""Command-line front end.

Subcommands: metrics, trace, web, torsion, bounds, gamma-table,
stadium-sweep, conjecture, triangle-roots.  Output is deterministic
JSON (fixed field order, 17-significant-digit floats) or CSV.  Exit
codes: 0 success, 2 validation error, 3 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from . import bounds as bnd
from . import fem
from . import offset as off
from . import polygon as pg
from . import webtorsion as wt
from .errors import (NoConvergence, NonConvergent, ParseError, RangeError,
                     TorsioError)
from .quadrature import QuadratureConfig
from .shapes import ShapeSpec


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    if isinstance(value, int):
        return str(value)
    if value is None:
        return "null"
    return '"' + str(value).replace("\\", "\\\\").replace('"', '\\"') + '"'


def dumps(obj, indent: int = 0) -> str:
    """Deterministic JSON: insertion order preserved, floats at .17g."""
    pad, pad_in = "  " * indent, "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = (f'{pad_in}"{k}": {dumps(v, indent + 1)}' for k, v in obj.items())
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = (pad_in + dumps(v, indent + 1) for v in obj)
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return _fmt(obj)


def _csv_cell(value) -> str:
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def to_csv(header, rows) -> str:
    lines = [",".join(header)]
    lines += [",".join(_csv_cell(c) for c in row) for row in rows]
    return "\n".join(lines) + "\n"


def parse_shape(text: str) -> ShapeSpec:
    """Parse the CLI shape grammar.

    regular:N:area | isoT:k | rect:ell | stadium:<corefile>:ell |
    file:<path> | random:n:seed
    """
    parts = text.split(":")
    family = parts[0]

    def number(i: int, kind=float):
        try:
            return kind(parts[i])
        except ValueError:
            pos = len(":".join(parts[:i])) + 1
            raise ParseError(f"expected a number at position {pos}: {parts[i]!r}",
                             position=pos)

    def arity(n: int):
        if len(parts) != n + 1:
            raise ParseError(
                f"{family} takes {n} parameter(s), got {len(parts) - 1}",
                position=len(family))

    if family == "regular":
        arity(2)
        n, a = number(1, int), number(2)
        if n < 3:
            raise RangeError("regular needs N >= 3")
        if a <= 0:
            raise RangeError("regular needs area > 0")
        return ShapeSpec("regular", n=n, area=a)
    if family == "isoT":
        arity(1)
        k = number(1)
        if k <= 0:
            raise RangeError("isoT needs k > 0")
        return ShapeSpec("isoT", k=k)
    if family == "rect":
        arity(1)
        ell = number(1)
        if ell <= 0:
            raise RangeError("rect needs ell > 0")
        return ShapeSpec("rect", ell=ell)
    if family == "stadium":
        arity(2)
        ell = number(2)
        if ell < 0:
            raise RangeError("stadium needs ell >= 0")
        return ShapeSpec("stadium", core_path=parts[1], ell=ell)
    if family == "file":
        arity(1)
        return ShapeSpec("file", path=parts[1])
    if family == "random":
        arity(2)
        n, seed = number(1, int), number(2, int)
        if n < 3:
            raise RangeError("random needs n >= 3")
        return ShapeSpec("random", n=n, seed=seed)
    raise ParseError(f"unknown shape family {family!r}", position=0)


def _parse_int_list(text: str) -> list[int]:
    """Grammar: comma-separated integers or a..b ranges, e.g. 3..10,20."""
    out = []
    for chunk in text.split(","):
        if ".." in chunk:
            lo, hi = chunk.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(chunk))
    return out


def _parse_grid(text: str) -> list[float]:
    """Grammar: start:step:stop (inclusive up to rounding)."""
    try:
        start, step, stop = (float(x) for x in text.split(":"))
    except ValueError:
        raise ParseError(f"grid must be start:step:stop, got {text!r}")
    if step <= 0:
        raise RangeError("grid step must be positive")
    out = []
    k = 0
    while (x := start + k * step) <= stop + 1e-12 * max(abs(stop), 1.0):
        out.append(x)
        k += 1
    return out


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("TORSIO_THREADS", "1")))
    except ValueError:
        return 1


def _pmap(fn, items):
    n = _threads()
    if n == 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _shape(args) -> pg.ConvexPolygon:
    return parse_shape(args.shape).build()


def _quad_cfg(args) -> QuadratureConfig:
    rel = getattr(args, "rel_tol", None) or 1e-12
    return QuadratureConfig(rel_tol=rel)


def cmd_metrics(args) -> None:
    poly = _shape(args)
    trace = off.offset_trace(poly)
    r = off.inradius(poly, trace)
    data = {
        "vertices": poly.n,
        "area": pg.area(poly),
        "perimeter": pg.perimeter(poly),
        "cotangent_sum": pg.cotangent_sum(poly),
        "isoperimetric_defect": pg.isoperimetric_defect(poly),
        "inradius": r,
        "r_first": trace.r_first,
        "extinction": trace.extinction.kind,
        "extinction_length": trace.extinction.length,
        "gamma": bnd.gamma(poly),
        "gamma_tilde": bnd.gamma_tilde(poly, trace),
    }
    _emit(args, dumps(data) + "\n")


def cmd_trace(args) -> None:
    poly = _shape(args)
    trace = off.offset_trace(poly)
    rows = [{
        "t_start": p.t_start, "t_end": p.t_end, "vertices": p.polygon.n,
        "area": p.A, "perimeter": p.L, "cotangent_sum": p.C,
    } for p in trace.pieces]
    if args.output == "csv":
        header = ["t_start", "t_end", "vertices", "area", "perimeter",
                  "cotangent_sum"]
        _emit(args, to_csv(header, [[r[h] for h in header] for r in rows]))
        return
    _emit(args, dumps({
        "R": trace.R, "r_first": trace.r_first,
        "extinction": trace.extinction.kind,
        "extinction_length": trace.extinction.length,
        "pieces": rows,
    }) + "\n")


def cmd_web(args) -> None:
    poly = _shape(args)
    est = wt.web_torsion(off.offset_trace(poly), args.p, _quad_cfg(args))
    _emit(args, dumps(est.to_json_obj()) + "\n")


def cmd_torsion(args) -> None:
    poly = _shape(args)
    est = fem.torsion(poly, args.p, args.accuracy)
    _emit(args, dumps(est.to_json_obj()) + "\n")


def cmd_bounds(args) -> None:
    poly = _shape(args)
    cfg = bnd.BoundsConfig(quad=_quad_cfg(args), fem_target_rel_err=args.accuracy)
    report = bnd.evaluate_bounds(poly, args.p, cfg)
    if args.output == "csv":
        header = ["name", "low", "value", "high", "status"]
        rows = [[c.name, c.low, c.value, c.high, c.status] for c in report.checks]
        _emit(args, to_csv(header, rows))
        return
    _emit(args, dumps(report.to_json_obj()) + "\n")


def cmd_gamma_table(args) -> None:
    ns = _parse_int_list(args.N)
    cfg = bnd.BoundsConfig(fem_target_rel_err=args.accuracy)

    def row(n: int):
        value, err = bnd.gamma_threshold(n, args.p, cfg)
        ref = bnd.REFERENCE_GAMMA_2.get(n) if args.p == 2.0 else None
        delta = value - ref if ref is not None else ""
        return [n, value, err, "" if ref is None else ref, delta]

    rows = _pmap(row, ns)
    _emit(args, to_csv(["N", "gamma_threshold", "error", "reference", "delta"],
                       rows))


def cmd_stadium_sweep(args) -> None:
    xs = _parse_grid(args.x)
    cfg = _quad_cfg(args)

    def row(x: float):
        return [x, wt.stadium_F(x, args.q, cfg),
                wt.stadium_inradius_functional(x, args.q, cfg)]

    rows = _pmap(row, xs)
    _emit(args, to_csv(["x", "perimeter_functional", "inradius_functional"],
                       rows))


def cmd_conjecture(args) -> None:
    poly = _shape(args)
    cfg = bnd.BoundsConfig(fem_target_rel_err=args.accuracy)
    verdict = bnd.conjecture_verdict(poly, args.p, cfg, with_fem=args.with_fem)
    _emit(args, dumps(verdict.to_json_obj()) + "\n")


def cmd_triangle_roots(args) -> None:
    k_low, k_high = bnd.triangle_threshold_roots()
    _emit(args, dumps({"k_low": k_low, "k_high": k_high}) + "\n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="torsio",
        description="Web p-torsion, p-Laplace torsion, and shape-functional "
                    "bounds for convex polygons.")
    sub = parser.add_subparsers(dest="verb", required=True)

    def add(name, fn, **flags):
        sp = sub.add_parser(name)
        if flags.get("shape"):
            sp.add_argument("--shape", required=True,
                            help="regular:N:area | isoT:k | rect:ell | "
                                 "stadium:<corefile>:ell | file:<path> | "
                                 "random:n:seed")
        if flags.get("p"):
            sp.add_argument("--p", type=float, default=2.0)
        if flags.get("accuracy"):
            sp.add_argument("--accuracy", type=float, default=1e-3)
        if flags.get("rel_tol"):
            sp.add_argument("--rel-tol", dest="rel_tol", type=float,
                            default=1e-12)
        sp.add_argument("--output", choices=("json", "csv"), default="json")
        sp.add_argument("--out", help="write to file instead of stdout")
        sp.set_defaults(fn=fn)
        return sp

    add("metrics", cmd_metrics, shape=True)
    add("trace", cmd_trace, shape=True)
    add("web", cmd_web, shape=True, p=True, rel_tol=True)
    add("torsion", cmd_torsion, shape=True, p=True, accuracy=True)
    add("bounds", cmd_bounds, shape=True, p=True, accuracy=True, rel_tol=True)
    gt = add("gamma-table", cmd_gamma_table, p=True, accuracy=True)
    gt.add_argument("--N", required=True, help="e.g. 3..10,20")
    gt.set_defaults(output="csv")
    sw = add("stadium-sweep", cmd_stadium_sweep, rel_tol=True)
    sw.add_argument("--q", type=float, required=True)
    sw.add_argument("--x", required=True, help="grid start:step:stop")
    sw.set_defaults(output="csv")
    cj = add("conjecture", cmd_conjecture, shape=True, p=True, accuracy=True)
    cj.add_argument("--with-fem", action="store_true")
    add("triangle-roots", cmd_triangle_roots)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        if getattr(args, "p", 2.0) <= 1.0:
            raise RangeError("p must exceed 1")
        args.fn(args)
        return 0
    except (NonConvergent, NoConvergence) as exc:
        print(f"torsio: did not converge: {exc}", file=sys.stderr)
        return 3
    except (TorsioError, ValueError, OSError) as exc:
        print(f"torsio: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
