"""Candidate-optimum validation by exhaustive scan of the sphere lattice.

A candidate x~ is refuted by any lattice point v = x~ + offset that is
feasible and improves the objective by more than eps. `validate_seq` scans
indices in order and stops at the first refutation; `validate_par` splits
the index range over a pool of workers, each folding its chunk with logical
AND, and the coordinator conjoins the per-worker results. Verdict and
witness index are identical for every worker count.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from . import backends
from .core import Problem, _as_vector, is_feasible, objective
from .sphere import SphereParams, angle_tables, cardinality, point_at

INT64_MAX = 2**63 - 1

__all__ = [
    "ValidationParams",
    "Witness",
    "Verdict",
    "Chunk",
    "check_point",
    "precheck_candidate",
    "partition_range",
    "validate_seq",
    "validate_par",
]


@dataclass(frozen=True)
class ValidationParams:
    """Knobs of the validation scan.

    d: number of parallels; rho: sphere radius; eps: optimality tolerance
    (a feasible point must beat the candidate by more than eps to refute
    it); delta: feasibility tolerance; early_exit: let a refutation cancel
    outstanding parallel work; workers: requested worker count L >= 1.
    """

    d: int = 5
    rho: float = 1.0
    eps: float = 1e-6
    delta: float = 0.0
    early_exit: bool = False
    workers: int = 1

    def __post_init__(self):
        if self.d < 3:
            raise ValueError(f"d must be >= 3, got {self.d}")
        if not (self.rho > 0 and np.isfinite(self.rho)):
            raise ValueError(f"rho must be positive and finite, got {self.rho}")
        if not (self.eps > 0):
            raise ValueError(f"eps must be > 0, got {self.eps}")
        if self.delta < 0:
            raise ValueError(f"delta must be >= 0, got {self.delta}")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")


@dataclass(frozen=True)
class Witness:
    """A refuting lattice point: index k, absolute coordinates, and the
    amount by which it beats the candidate objective."""

    k: int
    point: np.ndarray
    objective_gain: float


@dataclass(frozen=True)
class Verdict:
    correct: bool
    witness: Optional[Witness]
    points_checked: int
    feasible_points: int
    elapsed: float

    def __post_init__(self):
        if self.correct != (self.witness is None):
            raise ValueError("correct verdicts carry no witness and vice versa")


class Chunk(NamedTuple):
    lo: int
    hi: int


def check_point(problem: Problem, x_tilde, offset, params: ValidationParams) -> bool:
    """Per-point predicate: False iff x~ + offset refutes the candidate.

    Infeasible points pass, and so do feasible points whose objective does
    not exceed objective(x~) + eps (ties pass: the inequality is strict).
    This is the reference implementation the scan kernels replicate.
    """
    x = _as_vector(x_tilde, problem.n, "x_tilde")
    off = _as_vector(offset, problem.n, "offset")
    v = x + off
    if is_feasible(problem, v, params.delta) and objective(problem, v) > objective(
        problem, x
    ) + params.eps:
        return False
    return True


def precheck_candidate(problem: Problem, x_tilde, delta: float = 0.0) -> bool:
    """Feasibility of the candidate itself, reported separately from the
    optimality verdict (an infeasible candidate can still pass the scan)."""
    return is_feasible(problem, x_tilde, delta)


def partition_range(total: int, workers: int) -> list[Chunk]:
    """Split [0, total) into min(workers, total) contiguous chunks.

    The first (total mod workers) chunks get the extra element, so sizes
    differ by at most one; exact division reproduces equal chunks.
    """
    if total < 0:
        raise ValueError("total must be >= 0")
    if workers < 1:
        raise ValueError("workers must be >= 1")
    count = min(workers, total)
    if count == 0:
        return []
    base, extra = divmod(total, count)
    chunks = []
    lo = 0
    for i in range(count):
        hi = lo + base + (1 if i < extra else 0)
        chunks.append(Chunk(lo, hi))
        lo = hi
    return chunks


class _ScanContext(NamedTuple):
    center: np.ndarray
    b_eff: np.ndarray
    threshold: float
    sphere: SphereParams
    total: int
    cos_tab: np.ndarray
    sin_tab: np.ndarray
    backend: str


def _prepare(problem: Problem, x_tilde, params: ValidationParams, backend) -> _ScanContext:
    # fresh copy: callers may hand in read-only arrays, and the kernels
    # are compiled for one fixed argument signature
    center = _as_vector(x_tilde, problem.n, "x_tilde").copy()
    sphere = SphereParams(n=problem.n, d=params.d, rho=params.rho)
    total = cardinality(sphere.n, sphere.d)
    if total > INT64_MAX:
        raise OverflowError(
            f"validation set of {total} points exceeds the scan index range"
        )
    cos_tab, sin_tab = angle_tables(sphere.d)
    b_eff = problem.b + params.delta
    threshold = objective(problem, center) + params.eps
    resolved = backends.resolve_backend(backend)
    backends.warm_up(resolved)
    return _ScanContext(center, b_eff, threshold, sphere, total, cos_tab, sin_tab, resolved)


def _finish(
    problem: Problem,
    ctx: _ScanContext,
    params: ValidationParams,
    first: int,
    feasible: int,
    checked: int,
    elapsed: float,
) -> Verdict:
    witness = None
    if first >= 0:
        offset = point_at(first, ctx.sphere)
        v = ctx.center + offset
        gain = objective(problem, v) - objective(problem, ctx.center)
        v.flags.writeable = False
        witness = Witness(k=int(first), point=v, objective_gain=gain)
    return Verdict(
        correct=first < 0,
        witness=witness,
        points_checked=int(checked),
        feasible_points=int(feasible),
        elapsed=elapsed,
    )


def validate_seq(problem: Problem, x_tilde, params: ValidationParams, backend: str | None = None) -> Verdict:
    """Scan indices 0..K-1 in order; the first refutation ends the scan."""
    ctx = _prepare(problem, x_tilde, params, backend)
    fn = backends.scan_fn(ctx.backend)
    flags = np.zeros(1, dtype=np.int8)
    t0 = time.perf_counter()
    first, feasible, checked = fn(
        0,
        ctx.total,
        problem.A,
        ctx.b_eff,
        problem.c,
        ctx.center,
        ctx.threshold,
        ctx.sphere.d,
        float(ctx.sphere.rho),
        ctx.cos_tab,
        ctx.sin_tab,
        True,
        False,
        flags,
        0,
    )
    elapsed = time.perf_counter() - t0
    return _finish(problem, ctx, params, int(first), int(feasible), int(checked), elapsed)


def validate_par(problem: Problem, x_tilde, params: ValidationParams, backend: str | None = None) -> Verdict:
    """Partitioned scan over params.workers workers with AND-reduction.

    Each worker folds its chunk and records its smallest refuting index;
    the coordinator joins all workers, conjoins their booleans, and takes
    the smallest recorded index as the witness, so verdict and witness are
    independent of the worker count. With early_exit, a refutation cancels
    workers on higher chunks only; lower chunks keep scanning because they
    could still hold a smaller witness. Without early_exit every chunk is
    scanned in full, which keeps points_checked at K for benchmarking.
    """
    ctx = _prepare(problem, x_tilde, params, backend)
    fn = backends.scan_fn(ctx.backend)
    chunks = partition_range(ctx.total, params.workers)
    flags = np.zeros(len(chunks), dtype=np.int8)

    def worker(rank: int, chunk: Chunk):
        return fn(
            chunk.lo,
            chunk.hi,
            problem.A,
            ctx.b_eff,
            problem.c,
            ctx.center,
            ctx.threshold,
            ctx.sphere.d,
            float(ctx.sphere.rho),
            ctx.cos_tab,
            ctx.sin_tab,
            params.early_exit,
            params.early_exit,
            flags,
            rank,
        )

    t0 = time.perf_counter()
    with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
        futures = [pool.submit(worker, rank, chunk) for rank, chunk in enumerate(chunks)]
        results = [f.result() for f in futures]
    elapsed = time.perf_counter() - t0

    passed = True
    for first, _, _ in results:
        passed = passed and first < 0
    refuting = [int(first) for first, _, _ in results if first >= 0]
    first = -1 if passed else min(refuting)
    feasible = sum(int(r[1]) for r in results)
    checked = sum(int(r[2]) for r in results)
    return _finish(problem, ctx, params, first, feasible, checked, elapsed)
