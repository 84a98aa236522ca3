"""Command-line front end.

Subcommands: cell, gamma, variety, scan, chern-grass.  Data goes to stdout,
diagnostics (including timings) to stderr.  Exit codes are a stable
contract: 0 success, 1 internal assertion, 2 usage or input error, 3
verification failure (a check found a mismatch or methods disagree).
"""

from __future__ import annotations

import argparse
import csv as csv_mod
import io
import json
import os
import sys

from .csm import (
    METHODS,
    cell_poly_h,
    chern_grass_onerow,
    csm_variety,
    gamma_coefficient,
    gamma_table,
)
from .partition import Partition
from .poly import SparsePoly
from .verify import (
    CHECKS,
    RectUniverse,
    check_adjunction,
    check_cross_methods,
    check_duality,
    check_euler,
    check_positivity,
    check_pushforward_antisymmetry,
    check_structural,
)

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2
EXIT_VERIFY = 3


class UsageError(Exception):
    pass


def _parse_partition(text: str) -> Partition:
    try:
        return Partition.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _render_univariate(p: SparsePoly, var: str = "u") -> str:
    if p.is_zero():
        return "0"
    chunks = []
    for (k,), c in p.items_sorted():
        if k == 0:
            chunks.append(str(c))
        else:
            head = "" if c == 1 else ("-" if c == -1 else str(c))
            chunks.append(f"{head}{var}" + (f"^{k}" if k > 1 else ""))
    return " + ".join(chunks).replace("+ -", "- ")


def _emit_table(table, fmt: str):
    if fmt == "json":
        print(json.dumps(table.to_json_obj()))
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv_mod.writer(buf)
        writer.writerow(["beta", "coeff"])
        for beta, c in table.items_ordered():
            writer.writerow([str(beta), str(c)])
        sys.stdout.write(buf.getvalue())
    else:
        for beta, c in table.items_ordered():
            print(f"{beta} -> {c}")


def _cmd_cell(args) -> int:
    alpha = _parse_partition(args.alpha)
    if args.verbose:
        print(f"cell polynomial for {alpha}: {cell_poly_h(alpha)}", file=sys.stderr)
    table = gamma_table(alpha, args.method)
    _emit_table(table, args.format)
    return EXIT_OK


def _cmd_variety(args) -> int:
    alpha = _parse_partition(args.alpha)
    table = csm_variety(alpha, args.method)
    _emit_table(table, args.format)
    return EXIT_OK


def _applicable_methods(alpha: Partition) -> list[str]:
    methods = list(METHODS)
    if alpha.num_parts() <= 2:
        methods += ["lgv-enum", "lgv-det"]
    return methods


def _cmd_gamma(args) -> int:
    alpha = _parse_partition(args.alpha)
    beta = _parse_partition(args.beta)
    if not alpha.contains(beta):
        raise UsageError(f"{beta} is not contained in {alpha}")
    if args.all_methods:
        values = {}
        for m in _applicable_methods(alpha):
            values[m] = gamma_coefficient(alpha, beta, m)
            print(f"{m} {values[m]}")
        if len(set(values.values())) > 1:
            print("methods disagree", file=sys.stderr)
            return EXIT_VERIFY
        return EXIT_OK
    value = gamma_coefficient(alpha, beta, args.method)
    print(value)
    return EXIT_OK


def _cmd_chern_grass(args) -> int:
    if args.n < 1 or args.d < 1:
        raise UsageError("both --n and --d must be at least 1")
    poly = chern_grass_onerow(args.n, args.d)
    if args.format == "json":
        print(json.dumps({"n": args.n, "d": args.d,
                          "coeffs": [str(poly.coefficient((k,)))
                                     for k in range(poly.total_degree() + 1)]}))
    else:
        print(_render_univariate(poly))
    return EXIT_OK


def _cmd_scan(args) -> int:
    universe = RectUniverse.parse(args.rect, args.max_size)
    jobs = args.jobs if args.jobs else (os.cpu_count() or 1)
    budget = args.budget
    reports = []
    names = list(CHECKS) if args.check == "all" else [args.check]
    for name in names:
        if name == "positivity":
            reports.append(check_positivity(universe, jobs=jobs, budget=budget))
        elif name == "cross":
            methods = tuple(args.methods.split(","))
            reports.append(check_cross_methods(universe, methods, jobs=jobs, budget=budget))
        elif name == "duality":
            reports.append(check_duality(universe, jobs=jobs, budget=budget))
        elif name == "adjunction":
            reports.append(check_adjunction(universe, jobs=jobs, budget=budget))
        elif name == "euler":
            reports.append(check_euler(universe, jobs=jobs, budget=budget))
        elif name == "structural":
            reports.extend(check_structural(universe, jobs=jobs, budget=budget))
        elif name == "antisym":
            for d in range(2, universe.rows + 1):
                for n in range(1, universe.cols + 1):
                    reports.append(check_pushforward_antisymmetry(n, d))
        else:
            raise UsageError(f"unknown check {name!r}")
    if args.format == "json":
        print(json.dumps([r.to_json_obj() for r in reports]))
    else:
        print("\n\n".join(r.render_text() for r in reports))
    for r in reports:
        print(f"elapsed {r.check}: {r.elapsed:.3f}s", file=sys.stderr)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="csmgrass",
        description="Exact CSM classes of Schubert cells and varieties in Grassmannians.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_cell = sub.add_parser("cell", help="full coefficient table of a Schubert cell")
    p_cell.add_argument("alpha", help="partition, e.g. 3,2 (empty diagram: 0)")
    p_cell.add_argument("--method", choices=METHODS, default="h")
    p_cell.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p_cell.add_argument("-v", "--verbose", action="store_true",
                        help="dump the intermediate cell polynomial to stderr")
    p_cell.set_defaults(func=_cmd_cell)

    p_var = sub.add_parser("variety", help="coefficient table of a Schubert variety")
    p_var.add_argument("alpha")
    p_var.add_argument("--method", choices=METHODS, default="h")
    p_var.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p_var.set_defaults(func=_cmd_variety)

    p_gamma = sub.add_parser("gamma", help="a single coefficient gamma_{alpha,beta}")
    p_gamma.add_argument("alpha")
    p_gamma.add_argument("beta")
    p_gamma.add_argument("--method", default="det",
                         choices=("h", "rat", "det", "genfun", "lgv", "lgv-enum", "lgv-det"))
    p_gamma.add_argument("--all-methods", action="store_true",
                         help="print one line per applicable method; exit 3 on disagreement")
    p_gamma.set_defaults(func=_cmd_gamma)

    p_scan = sub.add_parser("scan", help="run verification checks over a diagram family")
    p_scan.add_argument("check", choices=CHECKS + ("structural", "all"))
    p_scan.add_argument("--rect", default="4x4", help="universe: all diagrams in NxD")
    p_scan.add_argument("--max-size", type=int, default=None,
                        help="only diagrams with at most this many boxes")
    p_scan.add_argument("--jobs", type=int, default=0,
                        help="worker processes (default: available parallelism)")
    p_scan.add_argument("--budget", type=float, default=None,
                        help="per-diagram wall-clock budget in seconds; over-budget "
                             "diagrams are recorded as skipped")
    p_scan.add_argument("--methods", default="h,rat,det",
                        help="comma-separated methods for the cross check")
    p_scan.add_argument("--format", choices=("text", "json"), default="text")
    p_scan.set_defaults(func=_cmd_scan)

    p_cg = sub.add_parser("chern-grass",
                          help="one-row part of the total Chern class of a Grassmannian")
    p_cg.add_argument("--n", type=int, required=True, help="columns (codimension side)")
    p_cg.add_argument("--d", type=int, required=True, help="rows (subspace dimension)")
    p_cg.add_argument("--format", choices=("text", "json"), default="text")
    p_cg.set_defaults(func=_cmd_chern_grass)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AssertionError as exc:
        print(f"internal assertion failed: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as exc:  # noqa: BLE001  (stable exit-code contract)
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
