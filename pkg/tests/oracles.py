"""Independent reference implementations used to derive expected values.

Everything here deliberately avoids the code paths under test: sphere
points come from a 50-digit mpmath evaluation of the coordinate formulas,
the validator oracle materializes every lattice point and scans it with
the plain per-point predicate, and the duplicate audit uses union-find
over a pairwise distance matrix.
"""

from fractions import Fraction

import mpmath as mp
import numpy as np

from lpcert import SphereParams, check_point, enumerate_dedup, is_feasible

mp.mp.dps = 50


def sphere_point(n, d, rho, u, t):
    """High-precision evaluation of the spherical-to-Cartesian formulas,
    rounded once to float64 per coordinate."""
    phis = [mp.pi * uj / d for uj in u]
    theta = mp.pi * t / d
    v = [rho * mp.cos(phis[0])]
    for j in range(1, n - 2):
        prod = mp.mpf(1)
        for i in range(j):
            prod *= mp.sin(phis[i])
        v.append(rho * mp.cos(phis[j]) * prod)
    full = mp.mpf(1)
    for p in phis:
        full *= mp.sin(p)
    v.append(rho * mp.sin(theta) * full)
    v.append(rho * mp.cos(theta) * full)
    return np.array([float(x) for x in v])


def exact_residuals(problem, x):
    """Residuals in exact rational arithmetic."""
    out = []
    for i in range(problem.m):
        s = Fraction(0)
        for j in range(problem.n):
            s += Fraction(problem.A[i, j]) * Fraction(float(x[j]))
        out.append(s - Fraction(problem.b[i]))
    return out


def brute_force_witness(problem, x_tilde, params):
    """First refuting lattice index by naive full materialization, or None."""
    sp = SphereParams(n=problem.n, d=params.d, rho=params.rho)
    for k, offset in enumerate(enumerate_dedup(sp)):
        if not check_point(problem, x_tilde, offset, params):
            return k
    return None


def brute_force_feasible_count(problem, x_tilde, params, upto=None):
    """Feasible lattice points among indices [0, upto) (all K when None)."""
    sp = SphereParams(n=problem.n, d=params.d, rho=params.rho)
    x = np.asarray(x_tilde, dtype=np.float64)
    count = 0
    for k, offset in enumerate(enumerate_dedup(sp)):
        if upto is not None and k >= upto:
            break
        if is_feasible(problem, x + offset, params.delta):
            count += 1
    return count


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, a):
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def union_find_audit(params, tol=1e-9):
    """Duplicate audit by exhaustive pairwise matching (quadratic, tiny
    inputs only). Returns the same five counts as dedup_audit."""
    from lpcert import enumerate_with_duplicates

    pts_a = np.array(list(enumerate_with_duplicates(params)))
    pts_b = np.array(list(enumerate_dedup(params)))
    na = len(pts_a)
    uf = _UnionFind(na)
    for i in range(na):
        for j in range(i + 1, na):
            if np.abs(pts_a[i] - pts_a[j]).max() <= tol:
                uf.union(i, j)
    roots = {uf.find(i) for i in range(na)}
    unique = len(roots)
    lost = 0
    for r in roots:
        if np.abs(pts_b - pts_a[r]).max(axis=1).min() > tol:
            lost += 1
    return na, na - unique, unique, len(pts_b), lost
