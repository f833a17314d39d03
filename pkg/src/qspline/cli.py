"""``qspline`` command-line tool.

Subcommands: ``eval``, ``figures``, ``verify``, ``gamma``.

Exit codes: 0 success, 1 a checked property failed, 2 invalid argument
(bad order literal, order outside the domain, pole of Gamma, malformed grid),
3 I/O failure.  Every written CSV gets a ``<file>.manifest.json`` sidecar.
``QSPLINE_THREADS`` caps the threads used for grid evaluation (0 = all cores).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from pathlib import Path
from typing import List, Optional, Sequence

import numpy as np

from .errors import QSplineError
from .figures import write_csv, write_figures
from .fourier import bspline_hat_array
from .gamma import GammaMethod, gamma
from .quaternion import (
    SplineOrder,
    format_order,
    format_quaternion,
    parse_quaternion,
    qabs_array,
)
from .time_domain import EvalConfig, bspline_time_grid
from .verify import SUITES, format_table, run_suite

EXIT_OK, EXIT_FAIL, EXIT_ARG, EXIT_IO = 0, 1, 2, 3
TIME_HEADER = ["t_or_xi", "scalar", "v1", "v2", "v3", "modulus"]
FOURIER_EXTRA = ["scalar_im", "v1_im", "v2_im", "v3_im"]


class ArgumentProblem(Exception):
    """Invalid command-line input (exit code 2)."""


def parse_grid(text: str) -> tuple:
    """``start:step:count`` -> ``(start, step, count)``."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ArgumentProblem(f"grid must be start:step:count, got {text!r}")
    try:
        start, step, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise ArgumentProblem(f"malformed grid {text!r}: {exc}") from None
    if not step > 0 or count < 1:
        raise ArgumentProblem("grid needs step > 0 and count >= 1")
    return start, step, count


def _order(text: str, floor: float, what: str) -> SplineOrder:
    try:
        q = parse_quaternion(text)
    except ValueError as exc:
        raise ArgumentProblem(str(exc)) from None
    try:
        return SplineOrder(q, floor)
    except QSplineError:
        raise ArgumentProblem(f"{what} needs Sc(q) > {floor:g}, got q = {format_order(q)}") from None


def write_manifest(path: Path, command: str, orders: Sequence[str], grid: Optional[dict],
                   outputs: Sequence[str], seconds: float, config: Optional[EvalConfig] = None) -> Path:
    manifest = {
        "command": command,
        "orders": list(orders),
        "grid": grid,
        "config": (config or EvalConfig()).as_dict(),
        "outputs": list(outputs),
        "timing": seconds,
    }
    target = Path(str(path) + ".manifest.json")
    target.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return target


# --------------------------------------------------------------------------
# subcommands


def cmd_eval(args) -> int:
    start = time.perf_counter()
    t0, dt, n = parse_grid(args.grid)
    if args.domain == "time":
        order = _order(args.q, 1.0, "time-domain evaluation")
        field = bspline_time_grid(order.q, t0, dt, n)
        x, vals = field.times, field.samples
        header = TIME_HEADER
        rows = [[x[j], *vals[j], float(np.linalg.norm(vals[j]))] for j in range(n)]
        grid = {"t0": t0, "dt": dt, "n": n}
    else:
        order = _order(args.q, 0.5, "Fourier-domain evaluation")
        x = t0 + dt * np.arange(n)
        vals = bspline_hat_array(order.q, x)
        mod = qabs_array(vals)
        header = TIME_HEADER + FOURIER_EXTRA
        rows = [[x[j], *vals[j].real, mod[j], *vals[j].imag] for j in range(n)]
        grid = {"xi0": t0, "dxi": dt, "n": n}
    if args.out is None:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([format(float(v) + 0.0, ".15g") for v in row])
        return EXIT_OK
    out = Path(args.out)
    write_csv(out, header, rows)
    write_manifest(out, _command_line(args), [format_order(order.q)], grid, [str(out)],
                   time.perf_counter() - start)
    print(f"wrote {n} rows to {out}")
    return EXIT_OK


def cmd_figures(args) -> int:
    start = time.perf_counter()
    report = write_figures(args.out, svg=args.svg)
    seconds = time.perf_counter() - start
    grid = {"t0": 0.0, "dt": 0.05, "n": 121}
    for path in report.outputs:
        if path.endswith(".csv"):
            write_manifest(Path(path), _command_line(args), report.orders, grid, report.outputs, seconds)
    print(f"wrote {len(report.outputs)} files to {args.out}")
    print("max modulus by m: " + ", ".join(f"{x:.6g}" for x in report.max_modulus))
    print(f"amplitude monotone in m: {report.monotone}")
    print(f"m = 0 vector columns zero: {report.zero_vector_m0}")
    print(f"planarity residual (max over m): {max(report.planarity):.3e}")
    if not report.ok:
        print("figure checks FAILED", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_verify(args) -> int:
    results = run_suite(args.suite, args.tol_profile, seed=args.seed)
    print(format_table(results))
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def cmd_gamma(args) -> int:
    try:
        q = parse_quaternion(args.q)
    except ValueError as exc:
        raise ArgumentProblem(str(exc)) from None
    if args.cross_check:
        values = []
        for method in GammaMethod:
            val = gamma(q, method, n=args.gauss_n).value
            values.append(val)
            print(f"{method.value:>12}: {format_quaternion(val)}")
        dev = max(abs(a - b) for i, a in enumerate(values) for b in values[i + 1:])
        print(f"max pairwise deviation: {dev:.3e}")
        return EXIT_OK
    print(format_quaternion(gamma(q, args.method, n=args.gauss_n).value))
    return EXIT_OK


# --------------------------------------------------------------------------


def _command_line(args) -> str:
    return " ".join(["qspline"] + list(getattr(args, "argv", [])))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qspline", description="Quaternionic B-splines")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="sample B_q in time or its transform in frequency")
    p.add_argument("--q", required=True, help='order literal, e.g. "3+1/5e1-0.3e2+0.4e3"')
    p.add_argument("--domain", choices=("time", "fourier"), default="time")
    p.add_argument("--grid", required=True, help="start:step:count")
    p.add_argument("--out", help="CSV path (default: stdout, no manifest)")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("figures", help="write the figure datasets")
    p.add_argument("--out", default="figures", help="output directory")
    p.add_argument("--svg", action="store_true", help="also write SVG line plots")
    p.set_defaults(func=cmd_figures)

    p = sub.add_parser("verify", help="run property suites")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--tol-profile", choices=("fast", "strict"), default="fast")
    p.add_argument("--seed", type=int, default=20240601)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gamma", help="quaternionic Gamma function")
    p.add_argument("--q", required=True)
    p.add_argument("--method", choices=[m.value for m in GammaMethod], default="complexified")
    p.add_argument("--gauss-n", type=int, default=10 ** 7, help="n for the Gauss limit")
    p.add_argument("--cross-check", action="store_true", help="print all three methods")
    p.set_defaults(func=cmd_gamma)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.argv = argv
    try:
        return args.func(args)
    except ArgumentProblem as exc:
        print(f"qspline: error: {exc}", file=sys.stderr)
        return EXIT_ARG
    except (QSplineError, ValueError) as exc:
        print(f"qspline: error: {exc}", file=sys.stderr)
        return EXIT_ARG
    except OSError as exc:
        print(f"qspline: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
