"""Command line interface: ``ldinterp <command> [options]``.

Exit status is 2 for invalid input, 1 when a check or internal assertion
fails and 0 otherwise.  Data files never contain timestamps; run metadata
goes to a JSON sidecar next to the CSV.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import analysis
from .domain import UNIT_SQUARE, Rect
from .errors import DomainError, NodeConstructionError, ValidationError
from .interp import Interpolant, evaluate, interpolate
from .nodes import IndexVariant, LissajousParams, format_real, generate_nodes, nodes_to_csv, nodes_to_json
from .quadrature import exact_cheb_integral, integrate
from .chebyshev import cheb_t


class UsageError(ValidationError):
    """Invalid command-line input."""


def _params(args) -> LissajousParams:
    return LissajousParams(args.n, args.p)


def _write(text: str, out: str | None):
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _read_rows(path: str) -> list:
    try:
        with open(path, newline="") as fh:
            return list(csv.DictReader(fh))
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _float(text: str, what: str) -> float:
    try:
        return float(text)
    except (TypeError, ValueError):
        raise UsageError(f"{what}: {text!r} is not a number") from None


def _read_node_values(path: str, expected: int) -> np.ndarray:
    """Values column of a per-node CSV (column ``value``, else the last column)."""
    rows = _read_rows(path)
    if not rows:
        raise UsageError(f"{path} has no data rows")
    column = "value" if "value" in rows[0] else list(rows[0])[-1]
    values = np.array([_float(r[column], f"{path} column {column}") for r in rows])
    if values.size != expected:
        raise UsageError(f"{path} has {values.size} values, the node set has {expected}")
    return values


def _builtin_function(name: str):
    """Callable for ``one``, ``f1``..``f3`` or ``cheb:i,j``, plus its exact weighted integral if known."""
    if name == "one":
        return (lambda x, y: np.ones_like(x)), 1.0
    if name.startswith("cheb:"):
        try:
            i, j = (int(v) for v in name[5:].split(","))
        except ValueError:
            raise UsageError(f"expected cheb:i,j with integers i, j >= 0, got {name!r}") from None
        if i < 0 or j < 0:
            raise UsageError(f"Chebyshev degrees must be nonnegative, got {name!r}")
        return (lambda x, y: cheb_t(i, x) * cheb_t(j, y)), exact_cheb_integral(i, j)
    try:
        fid = analysis.TestFunction(name)
    except ValueError:
        raise UsageError(f"unknown function {name!r}; use one, f1, f2, f3 or cheb:i,j") from None
    return (lambda x, y: analysis.test_function(fid, x, y)), None


# --- commands ------------------------------------------------------------------


def cmd_nodes(args) -> int:
    nodes = generate_nodes(_params(args))
    _write(nodes_to_json(nodes) if args.format == "json" else nodes_to_csv(nodes), args.out)
    return 0


def cmd_quadrature(args) -> int:
    params = _params(args)
    nodes = generate_nodes(params)
    if Path(args.function).is_file():
        value = float(np.dot(nodes.weights, _read_node_values(args.function, len(nodes))))
        exact = None
    else:
        f, exact = _builtin_function(args.function)
        value = integrate(nodes, f)
    lines = ["quantity,value", f"quadrature,{format_real(value)}"]
    if exact is not None:
        lines += [f"exact,{format_real(exact)}", f"residual,{format_real(value - exact)}"]
    _write("\n".join(lines) + "\n", None)
    return 0


def _coefficient_paths(out: str) -> tuple:
    path = Path(out)
    if path.suffix == ".json":
        return None, path
    return path, path.with_suffix(".json")


def cmd_interpolate(args) -> int:
    params = _params(args)
    rect = Rect.parse(args.rect) if args.rect else UNIT_SQUARE
    variant = IndexVariant(args.variant)
    nodes = generate_nodes(params)
    if args.data:
        source = _read_node_values(args.data, len(nodes))
    else:
        source, _ = _builtin_function(args.function)
    interp = interpolate(params, source, rect, variant, nodeset=nodes)
    csv_path, json_path = _coefficient_paths(args.out)
    if csv_path is not None:
        csv_path.write_text(interp.to_csv())
    json_path.write_text(interp.to_json())
    return 0


def _load_interpolant(path: str) -> Interpolant:
    p = Path(path)
    mirror = p if p.suffix == ".json" else p.with_suffix(".json")
    try:
        doc = json.loads(mirror.read_text())
    except OSError:
        raise UsageError(f"cannot read coefficient metadata {mirror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{mirror} is not valid JSON: {exc}") from None
    if p.suffix != ".json":
        # the CSV is the authoritative coefficient list; the mirror supplies params and rect
        doc["coefficients"] = [
            {"i": int(r["i"]), "j": int(r["j"]), "c": _float(r["c"], f"{p} coefficient")} for r in _read_rows(path)
        ]
    try:
        return Interpolant.from_dict(doc)
    except (KeyError, TypeError) as exc:
        raise UsageError(f"{mirror} is missing field {exc}") from None


def cmd_evaluate(args) -> int:
    interp = _load_interpolant(args.coeffs)
    if args.points:
        rows = _read_rows(args.points)
        pts = np.array([[_float(r["x"], "x"), _float(r["y"], "y")] for r in rows]).reshape(-1, 2)
    else:
        try:
            nx, ny = (int(v) for v in args.grid.split(","))
        except ValueError:
            raise UsageError(f"--grid expects NX,NY, got {args.grid!r}") from None
        pts = analysis.EvaluationGrid(interp.rect, nx, ny).points
    values = evaluate(interp, pts, extrapolate=args.extrapolate)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["x", "y", "value"])
    for (x, y), v in zip(pts, values):
        writer.writerow([format_real(x), format_real(y), format_real(v)])
    _write(buf.getvalue(), args.out)
    return 0


def cmd_lebesgue(args) -> int:
    params = _params(args)
    est = analysis.lebesgue_constant(params, args.grid, IndexVariant(args.variant), backend=args.backend)
    x, y = est.argmax
    _write(
        "n,p,nodes,lebesgue,argmax_x,argmax_y\n"
        f"{params.n},{params.p},{params.node_count},{format_real(est.value)},{format_real(x)},{format_real(y)}\n",
        None,
    )
    return 0


def cmd_experiment(args) -> int:
    result = analysis.run_figure(args.figure, max_nodes=args.max_nodes, n_max=args.n_max, backend=args.backend)
    result.metadata["figure"] = args.figure
    _write(result.to_csv(), args.out)
    if args.out and args.out != "-":
        Path(args.out).with_suffix(".json").write_text(result.sidecar_json())
    return 0


def cmd_verify(args) -> int:
    from .verify import run_checks

    results = run_checks(quick=args.quick)
    for r in results:
        print(r.line())
    return 0 if all(r.passed for r in results) else 1


# --- parser ----------------------------------------------------------------------


def _add_params(p):
    p.add_argument("--n", type=int, required=True, help="frequency n of the first coordinate")
    p.add_argument("--p", type=int, required=True, help="offset p; the second frequency is n + p")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ldinterp", description="Polynomial interpolation on Lissajous node sets.")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("nodes", help="list the interpolation nodes")
    _add_params(p)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out", help="output file (default: stdout)")
    p.set_defaults(func=cmd_nodes)

    p = sub.add_parser("quadrature", help="apply the node quadrature rule")
    _add_params(p)
    p.add_argument("--function", required=True,
                   help="one, f1, f2, f3, cheb:i,j or a CSV file of per-node values")
    p.set_defaults(func=cmd_quadrature)

    p = sub.add_parser("interpolate", help="compute interpolation coefficients")
    _add_params(p)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--data", help="CSV of per-node values in node order")
    src.add_argument("--function", help="one, f1, f2, f3 or cheb:i,j")
    p.add_argument("--rect", help="source rectangle x0,x1,y0,y1 (default -1,1,-1,1)")
    p.add_argument("--variant", choices=[v.value for v in IndexVariant if v is not IndexVariant.GAMMA],
                   default=IndexVariant.GAMMA_L.value)
    p.add_argument("--out", required=True, help="coefficient file; .csv also writes a .json mirror")
    p.set_defaults(func=cmd_interpolate)

    p = sub.add_parser("evaluate", help="evaluate a stored interpolant")
    p.add_argument("--coeffs", required=True, help="coefficient .json, or .csv with its .json mirror")
    where = p.add_mutually_exclusive_group(required=True)
    where.add_argument("--points", help="CSV with columns x, y")
    where.add_argument("--grid", help="uniform NX,NY grid on the interpolation rectangle")
    p.add_argument("--extrapolate", action="store_true", help="allow points outside the rectangle")
    p.add_argument("--out", help="output CSV (default: stdout)")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("lebesgue", help="estimate the Lebesgue constant")
    _add_params(p)
    p.add_argument("--grid", type=int, default=analysis.DEFAULT_LEBESGUE_GRID,
                   help="points per side of the uniform grid (default %(default)s)")
    p.add_argument("--variant", choices=["l", "ltilde"], default="l")
    p.add_argument("--backend", choices=["compiled", "python"])
    p.set_defaults(func=cmd_lebesgue)

    p = sub.add_parser("experiment", help="data series of a convergence figure")
    p.add_argument("--figure", required=True, choices=list(analysis.FIGURES))
    p.add_argument("--out", help="output CSV (default: stdout); a .json sidecar holds metadata")
    p.add_argument("--max-nodes", type=int, default=analysis.ERROR_NODE_BUDGET,
                   help="node budget of the error figures (default %(default)s)")
    p.add_argument("--n-max", type=int, default=50, help="largest n of the Lebesgue figure (default %(default)s)")
    p.add_argument("--backend", choices=["compiled", "python"])
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("verify", help="run the numerical property suite")
    p.add_argument("--quick", action="store_true", help="smaller parameter ranges")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO, format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except (ValidationError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (AssertionError, NodeConstructionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
