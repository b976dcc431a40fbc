"""Shared-memory scalability benchmark over the parallel validator.

Times validate_par for each requested worker count on one fixed instance,
with a discarded warm-up run per count (this also absorbs JIT compilation)
and the median of the timed repeats reported. Speedup is measured against
the L=1 run of the parallel path, so it isolates parallel overhead rather
than comparing against the sequential code path. The verdict must be
identical across every run; a mismatch aborts the benchmark, since timing
numbers for disagreeing scans would be meaningless.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass, replace

import numpy as np

from .core import Problem
from .validate import ValidationParams, validate_par

__all__ = ["BenchRow", "BenchResult", "run_bench"]

CSV_HEADER = "workers,seconds,speedup"


@dataclass(frozen=True)
class BenchRow:
    workers: int
    seconds: float
    speedup: float


@dataclass(frozen=True)
class BenchResult:
    rows: tuple[BenchRow, ...]

    def to_csv(self) -> str:
        lines = [CSV_HEADER]
        for row in self.rows:
            lines.append(f"{row.workers},{row.seconds:.17g},{row.speedup:.17g}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_csv(cls, text: str) -> "BenchResult":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines or lines[0] != CSV_HEADER:
            raise ValueError(f"expected header {CSV_HEADER!r}")
        rows = []
        for ln in lines[1:]:
            w, s, sp = ln.split(",")
            rows.append(BenchRow(workers=int(w), seconds=float(s), speedup=float(sp)))
        return cls(rows=tuple(rows))


def run_bench(
    problem: Problem,
    x_tilde,
    params: ValidationParams,
    workers_list,
    repeats: int = 3,
    backend: str | None = None,
) -> BenchResult:
    """Benchmark validate_par for each L in workers_list.

    workers_list must contain 1 (the speedup baseline). early_exit is
    forced off so every run scans all K points.
    """
    workers_list = [int(w) for w in workers_list]
    if 1 not in workers_list:
        raise ValueError("workers_list must include 1, the speedup baseline")
    if any(w < 1 for w in workers_list):
        raise ValueError("worker counts must be >= 1")
    if repeats < 1:
        raise ValueError("repeats must be >= 1")
    params = replace(params, early_exit=False)
    x_tilde = np.asarray(x_tilde, dtype=np.float64)

    seconds: dict[int, float] = {}
    reference: tuple[bool, int | None] | None = None
    for workers in workers_list:
        run_params = replace(params, workers=workers)
        times = []
        for rep in range(repeats + 1):  # first run is the discarded warm-up
            verdict = validate_par(problem, x_tilde, run_params, backend=backend)
            outcome = (verdict.correct, verdict.witness.k if verdict.witness else None)
            if reference is None:
                reference = outcome
            elif outcome != reference:
                raise RuntimeError(
                    f"verdict changed across worker counts: {outcome} vs {reference}"
                )
            if rep > 0:
                times.append(verdict.elapsed)
        seconds[workers] = statistics.median(times)

    base = seconds[1]
    rows = tuple(
        BenchRow(workers=w, seconds=seconds[w], speedup=base / seconds[w])
        for w in workers_list
    )
    return BenchResult(rows=rows)
