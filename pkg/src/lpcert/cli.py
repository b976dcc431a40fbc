"""Command-line interface.

Exit codes: 0 = correct (or subcommand succeeded), 1 = incorrect candidate,
2 = any usage, parsing, or overflow error. Results go to stdout,
diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import itertools
import sys

from . import bench as bench_mod
from . import instances, sphere, validate
from .core import DimensionError


def _add_sphere_args(p: argparse.ArgumentParser, with_rho: bool = True) -> None:
    p.add_argument("--n", type=int, required=True, help="space dimension (>= 3)")
    p.add_argument("--d", type=int, required=True, help="number of parallels (>= 3)")
    if with_rho:
        p.add_argument("--rho", type=float, default=1.0, help="sphere radius")


def _add_validation_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--problem", required=True, help="problem file path")
    p.add_argument("--solution", required=True, help="candidate solution file path")
    p.add_argument("--d", type=int, default=5)
    p.add_argument("--rho", type=float, default=1.0)
    p.add_argument("--eps", type=float, default=1e-6)
    p.add_argument("--delta", type=float, default=0.0)
    p.add_argument("--backend", default=None, choices=("auto", "numba", "numpy"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lpcert",
        description="Certify a candidate LP optimum by exhaustively checking a "
        "regular point set on a small hypersphere around it.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a candidate solution")
    _add_validation_args(p)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--seq", action="store_true", help="force the sequential scan")
    p.add_argument("--early-exit", action="store_true")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("count", help="print the validation-set size K")
    _add_sphere_args(p, with_rho=False)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("points", help="stream validation points as CSV")
    _add_sphere_args(p)
    p.add_argument("--limit", type=int, default=None, help="stop after this many points")
    p.set_defaults(func=cmd_points)

    p = sub.add_parser("audit", help="duplicate audit of the two enumerations")
    _add_sphere_args(p)
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("bench", help="scalability benchmark over worker counts")
    _add_validation_args(p)
    p.add_argument("--workers", default="1,2,4,8", help="comma-separated worker counts")
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--out", default=None, help="write CSV here instead of stdout")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("gen", help="generate a known-optimum test instance")
    p.add_argument("--kind", required=True, choices=("hypercube", "capped-cube"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--side", type=float, default=10.0)
    p.add_argument("--cap", type=float, default=None)
    p.add_argument("--out", required=True, help="problem file to write")
    p.add_argument("--solution-out", default=None, help="also write the optimum here")
    p.set_defaults(func=cmd_gen)

    return parser


def _load_pair(args):
    problem = instances.load_problem(args.problem)
    x_tilde = instances.load_solution(args.solution, problem.n)
    return problem, x_tilde


def _backend(args):
    return None if args.backend in (None, "auto") else args.backend


def cmd_validate(args) -> int:
    problem, x_tilde = _load_pair(args)
    params = validate.ValidationParams(
        d=args.d,
        rho=args.rho,
        eps=args.eps,
        delta=args.delta,
        early_exit=args.early_exit,
        workers=args.workers,
    )
    feasible = validate.precheck_candidate(problem, x_tilde, args.delta)
    print(f"candidate feasible: {'yes' if feasible else 'no'}")
    if args.seq:
        verdict = validate.validate_seq(problem, x_tilde, params, backend=_backend(args))
    else:
        verdict = validate.validate_par(problem, x_tilde, params, backend=_backend(args))
    print("correct" if verdict.correct else "incorrect")
    if verdict.witness is not None:
        w = verdict.witness
        print(f"witness index: {w.k}")
        print(f"witness point: {sphere.format_point_csv(w.point)}")
        print(f"objective gain: {w.objective_gain:.17g}")
    total = sphere.cardinality(problem.n, args.d)
    print(
        f"feasible validation points: {verdict.feasible_points} of "
        f"{verdict.points_checked} checked (set size {total})"
    )
    print(f"elapsed: {verdict.elapsed:.6f} s", file=sys.stderr)
    return 0 if verdict.correct else 1


def cmd_count(args) -> int:
    print(sphere.cardinality(args.n, args.d))
    return 0


def cmd_points(args) -> int:
    params = sphere.SphereParams(n=args.n, d=args.d, rho=args.rho)
    stream = sphere.enumerate_dedup(params)
    if args.limit is not None:
        stream = itertools.islice(stream, args.limit)
    for point in stream:
        print(sphere.format_point_csv(point))
    return 0


def cmd_audit(args) -> int:
    params = sphere.SphereParams(n=args.n, d=args.d, rho=args.rho)
    audit = sphere.dedup_audit(params, tol=args.tol)
    print(
        f"{audit.total_a} {audit.duplicates_a} {audit.unique_a} "
        f"{audit.count_b} {audit.lost_unique}"
    )
    return 0


def cmd_bench(args) -> int:
    problem, x_tilde = _load_pair(args)
    params = validate.ValidationParams(
        d=args.d, rho=args.rho, eps=args.eps, delta=args.delta
    )
    workers_list = [int(w) for w in args.workers.split(",") if w.strip()]
    result = bench_mod.run_bench(
        problem,
        x_tilde,
        params,
        workers_list,
        repeats=args.repeats,
        backend=_backend(args),
    )
    csv_text = result.to_csv()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(csv_text)
        print(f"wrote {args.out}", file=sys.stderr)
    else:
        print(csv_text, end="")
    return 0


def cmd_gen(args) -> int:
    spec = instances.GeneratorSpec(kind=args.kind, n=args.n, side=args.side, cap=args.cap)
    problem, optimum = instances.generate(spec)
    instances.save_problem(problem, args.out)
    if args.solution_out:
        with open(args.solution_out, "w") as fh:
            fh.write(instances.write_solution(optimum))
    print(f"wrote {args.out}", file=sys.stderr)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BrokenPipeError:
        return 0
    except (
        OverflowError,
        DimensionError,
        instances.ParseError,
        ValueError,
        RuntimeError,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
