"""Command-line front end: generate, benchmark, and solve.

Subcommands:

* ``gen``    -- print Adomian polynomials A_0..A_{n-1} (1-D) or the full
                2-D Adomian matrix, computed by a selectable algorithm.
* ``bench``  -- time the generators against each other and write a CSV/JSON
                report; per-run timeout with the give-up convention.
* ``solve``  -- run the exact decomposition solver on a first-order IVP
                u' = a*u + c*u^N + g(x), u(0) = u0.

All output is deterministic for a fixed invocation (timings excepted), so
the text and JSON forms are suitable for golden-file testing. Exit codes:
0 success, 2 usage or validation error, 3 benchmark where every run timed
out, 1 internal benchmark disagreement.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .bench import (
    ALGORITHM_NAMES,
    AlgorithmMismatchError,
    BenchConfig,
    run_bench,
    write_report,
)
from .matrix import PackedPolynomial, adomian_power_1d, adomian_power_2d
from .poly import ParseError, Polynomial
from .reference import duan_corollary1, duan_corollary3, oracle_2d, oracle_series_1d
from .solver import IVProblem, parse_unipoly, partial_sum, solve

__all__ = ["main"]


def _as_polynomial(entry) -> Polynomial:
    if isinstance(entry, PackedPolynomial):
        return entry.to_polynomial()
    return entry


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adomian",
        description="Adomian polynomial generator, benchmark harness and ADM demo solver",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate Adomian polynomials")
    gen.add_argument("--power", type=int, required=True, help="nonlinearity power N in u^N")
    gen.add_argument("--dim", type=int, choices=(1, 2), default=1)
    gen.add_argument("--order", type=int, help="number of polynomials (1-D)")
    gen.add_argument("--rows", type=int, help="row count of the 2-D matrix")
    gen.add_argument("--cols", type=int, help="column count of the 2-D matrix")
    gen.add_argument(
        "--algo",
        choices=("matrix", "duan1", "duan3", "oracle"),
        default="matrix",
    )
    gen.add_argument("--format", choices=("text", "json"), default="text")

    bench = sub.add_parser("bench", help="compare generator speeds")
    bench.add_argument(
        "--algos",
        default="matrix,duan1,duan3",
        help=f"comma-separated subset of {','.join(ALGORITHM_NAMES)}",
    )
    bench.add_argument("--powers", required=True, help="comma-separated powers")
    bench.add_argument("--orders", required=True, help="comma-separated orders")
    bench.add_argument("--reps", type=int, default=3)
    bench.add_argument("--warmup", type=int, default=1)
    bench.add_argument("--timeout", type=float, default=600.0, help="seconds per run")
    bench.add_argument("--out", help="report file path")
    bench.add_argument("--format", choices=("csv", "json"), default="csv")

    solve_p = sub.add_parser("solve", help="solve u' = a*u + c*u^N + g(x), u(0)=u0")
    solve_p.add_argument("--a", default="0", help="linear coefficient (rational)")
    solve_p.add_argument("--c", default="0", help="nonlinearity coefficient (rational)")
    solve_p.add_argument("--power", type=int, required=True, help="nonlinearity power N")
    solve_p.add_argument("--g", default="0", help="forcing polynomial in x")
    solve_p.add_argument("--u0", required=True, help="initial value (rational)")
    solve_p.add_argument("--depth", type=int, default=5, help="number of components beyond u_0")
    solve_p.add_argument("--format", choices=("text", "json"), default="text")
    return parser


def _cmd_gen(args, parser) -> int:
    if args.power < 1:
        parser.error("--power must be >= 1")
    if args.dim == 1:
        if args.order is None:
            parser.error("--order is required with --dim 1")
        if args.rows is not None or args.cols is not None:
            parser.error("--rows/--cols apply only to --dim 2")
        if args.order < 1:
            parser.error("--order must be >= 1")
        if args.algo == "matrix":
            polys = [_as_polynomial(p) for p in adomian_power_1d(args.power, args.order)]
        elif args.algo == "duan1":
            polys = duan_corollary1(args.power, args.order)
        elif args.algo == "duan3":
            polys = duan_corollary3(args.power, args.order)
        else:
            polys = oracle_series_1d(args.power, args.order)
        items = [((k,), poly) for k, poly in enumerate(polys)]
    else:
        if args.algo in ("duan1", "duan3"):
            parser.error(f"--algo {args.algo} supports only --dim 1")
        if args.rows is None or args.cols is None:
            parser.error("--rows and --cols are required with --dim 2")
        if args.order is not None:
            parser.error("--order applies only to --dim 1; use --rows/--cols")
        if args.rows < 1 or args.cols < 1:
            parser.error("--rows/--cols must be >= 1")
        if args.algo == "matrix":
            grid = adomian_power_2d(args.power, args.rows, args.cols)
            items = [
                ((k, l), _as_polynomial(grid[k, l]))
                for k in range(args.rows)
                for l in range(args.cols)
            ]
        else:
            items = [
                ((k, l), oracle_2d(args.power, (k, l)))
                for k in range(args.rows)
                for l in range(args.cols)
            ]
    if args.format == "text":
        for index, poly in items:
            label = ",".join(str(i) for i in index)
            print(f"A[{label}] = {poly}")
    else:
        payload = [
            {"index": list(index), "polynomial": poly.to_json_terms()}
            for index, poly in items
        ]
        print(json.dumps(payload, indent=2))
    return 0


def _parse_int_list(text: str, flag: str, parser) -> tuple[int, ...]:
    try:
        values = tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        parser.error(f"{flag} expects comma-separated integers, got {text!r}")
    if not values:
        parser.error(f"{flag} must not be empty")
    return values


def _cmd_bench(args, parser) -> int:
    algos = tuple(part.strip() for part in args.algos.split(",") if part.strip())
    powers = _parse_int_list(args.powers, "--powers", parser)
    orders = _parse_int_list(args.orders, "--orders", parser)
    try:
        cfg = BenchConfig(
            algorithms=algos,
            powers=powers,
            orders=orders,
            repetitions=args.reps,
            timeout=args.timeout,
            warmup=args.warmup,
        )
    except ValueError as exc:
        parser.error(str(exc))
    try:
        report = run_bench(cfg)
    except AlgorithmMismatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.out:
        write_report(report, args.format, args.out)
    medians = report.medians()
    print(f"{'algorithm':<10} {'power':>5} {'order':>6} {'median_s':>12}")
    for algo in cfg.algorithms:
        for power in cfg.powers:
            for order in cfg.orders:
                med = medians.get((algo, power, order))
                cell = "timeout" if med is None else f"{med:.6f}"
                print(f"{algo:<10} {power:>5} {order:>6} {cell:>12}")
    if report.all_timed_out:
        return 3
    return 0


def _rational(text: str, flag: str, parser) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        parser.error(f"{flag} expects a rational like 3, -1/2; got {text!r}")


def _cmd_solve(args, parser) -> int:
    a = _rational(args.a, "--a", parser)
    c = _rational(args.c, "--c", parser)
    u0 = _rational(args.u0, "--u0", parser)
    try:
        g = parse_unipoly(args.g)
    except ParseError as exc:
        parser.error(f"--g: {exc}")
    try:
        problem = IVProblem(a=a, c=c, power=args.power, g=g, u0=u0, depth=args.depth)
    except ValueError as exc:
        parser.error(str(exc))
    solution = solve(problem)
    total = partial_sum(solution, solution.depth)
    if args.format == "text":
        for k, component in enumerate(solution.components):
            print(f"u[{k}] = {component}")
        print(f"sum = {total}")
    else:
        payload = solution.to_json()
        payload["partial_sum"] = total.to_json_coeffs()
        print(json.dumps(payload, indent=2))
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "gen":
        return _cmd_gen(args, parser)
    if args.command == "bench":
        return _cmd_bench(args, parser)
    return _cmd_solve(args, parser)


if __name__ == "__main__":
    sys.exit(main())
