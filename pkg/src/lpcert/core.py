"""Dense LP problem representation, objective evaluation, and feasibility tests.

The problem form is  max <c, x>  subject to  A x <= b,  x in R^n, with a
dense m-by-n constraint matrix. All dot products in this module accumulate
strictly left to right in index order; the fast scan kernels replicate the
same accumulation order, so a verdict computed here is bit-identical to one
computed by any kernel backend or worker partition.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class DimensionError(ValueError):
    """A vector or matrix does not match the problem dimensions."""


def _as_vector(x, length: int, what: str) -> np.ndarray:
    v = np.asarray(x, dtype=np.float64)
    if v.ndim != 1 or v.shape[0] != length:
        raise DimensionError(
            f"{what} must be a length-{length} vector, got shape {v.shape}"
        )
    return v


@dataclass(frozen=True)
class Problem:
    """Dense LP instance: maximize <c, x> subject to A x <= b.

    Arrays are copied, coerced to float64, and frozen so instances can be
    shared freely across worker threads.
    """

    A: np.ndarray
    b: np.ndarray
    c: np.ndarray

    def __post_init__(self):
        A = np.array(self.A, dtype=np.float64, copy=True, order="C")
        if A.ndim != 2 or A.shape[0] < 1 or A.shape[1] < 1:
            raise ValueError(f"A must be a 2-D matrix with m,n >= 1, got shape {A.shape}")
        m, n = A.shape
        b = np.array(self.b, dtype=np.float64, copy=True)
        c = np.array(self.c, dtype=np.float64, copy=True)
        if b.shape != (m,):
            raise DimensionError(f"b must have {m} entries, got shape {b.shape}")
        if c.shape != (n,):
            raise DimensionError(f"c must have {n} entries, got shape {c.shape}")
        for name, arr in (("A", A), ("b", b), ("c", c)):
            if not np.isfinite(arr).all():
                raise ValueError(f"{name} contains non-finite entries")
        for arr in (A, b, c):
            arr.flags.writeable = False
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    @property
    def n(self) -> int:
        """Number of variables."""
        return self.A.shape[1]

    @property
    def m(self) -> int:
        """Number of inequality constraints."""
        return self.A.shape[0]


def objective(problem: Problem, x) -> float:
    """Objective value <c, x>, accumulated left to right."""
    x = _as_vector(x, problem.n, "x")
    c = problem.c
    s = 0.0
    for j in range(problem.n):
        s += c[j] * x[j]
    return float(s)


def is_feasible(problem: Problem, x, delta: float = 0.0) -> bool:
    """True iff <A_i, x> <= b_i + delta for every constraint row i.

    delta = 0 is the exact test; a small positive delta tolerates points
    sitting a rounding error outside the boundary.
    """
    if delta < 0:
        raise ValueError("delta must be >= 0")
    x = _as_vector(x, problem.n, "x")
    A, b = problem.A, problem.b
    n = problem.n
    for i in range(problem.m):
        s = 0.0
        for j in range(n):
            s += A[i, j] * x[j]
        if s > b[i] + delta:
            return False
    return True


def residuals(problem: Problem, x) -> np.ndarray:
    """Constraint residuals r_i = <A_i, x> - b_i (feasible at delta iff max <= delta)."""
    x = _as_vector(x, problem.n, "x")
    A, b = problem.A, problem.b
    n = problem.n
    r = np.empty(problem.m)
    for i in range(problem.m):
        s = 0.0
        for j in range(n):
            s += A[i, j] * x[j]
        r[i] = s - b[i]
    return r
