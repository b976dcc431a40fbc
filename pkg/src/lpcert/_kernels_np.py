"""Pure-numpy batch kernels: the fallback scan path and the shared point builder.

Vectorization is over points (the large axis); loops run over the small
problem dimension so every element sees the same left-to-right operation
chain as the scalar and numba paths. No cross-element reductions enter any
value, which keeps results independent of batch size and worker
partitioning, bit for bit.
"""

from __future__ import annotations

import numpy as np


def decode_indices(ks: np.ndarray, d: int, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Mixed-radix decode of flat indices: digit j-1 (LSD first) -> u_{j}."""
    dm1 = d - 1
    n_phi = n - 2
    stride = dm1**n_phi
    t = ks // stride
    rem = ks - t * stride
    u = np.empty((len(ks), n_phi), dtype=np.int64)
    for j in range(n_phi):
        u[:, j] = rem % dm1 + 1
        rem = rem // dm1
    return u, t


def build_offsets(
    u: np.ndarray,
    t: np.ndarray,
    rho: float,
    cos_tab: np.ndarray,
    sin_tab: np.ndarray,
) -> np.ndarray:
    """Sphere-relative points for digit rows u (B, n-2) and theta indices t (B,)."""
    n_phi = u.shape[1]
    n = n_phi + 2
    v = np.empty((u.shape[0], n))
    v[:, 0] = rho * cos_tab[u[:, 0]]
    prod = np.ones(u.shape[0])
    for i in range(1, n_phi):
        prod = prod * sin_tab[u[:, i - 1]]
        v[:, i] = rho * cos_tab[u[:, i]] * prod
    prod = prod * sin_tab[u[:, n_phi - 1]]
    v[:, n - 2] = rho * sin_tab[t] * prod
    v[:, n - 1] = rho * cos_tab[t] * prod
    return v


def scan_range(
    lo: int,
    hi: int,
    A: np.ndarray,
    b_eff: np.ndarray,
    c: np.ndarray,
    center: np.ndarray,
    threshold: float,
    d: int,
    rho: float,
    cos_tab: np.ndarray,
    sin_tab: np.ndarray,
    stop_on_refute: bool,
    early_exit: bool,
    flags: np.ndarray,
    rank: int,
    batch_size: int = 16384,
) -> tuple[int, int, int]:
    """Scan indices [lo, hi) for a feasible objective improver.

    Returns (first refuting index or -1, feasible count, points checked).
    b_eff is b + delta and threshold is objective(center) + eps, both
    precomputed once by the caller so every backend compares against
    identical values. flags[r] != 0 signals that worker r refuted; a worker
    only aborts for lower-ranked refutations, which cannot affect its
    contribution to the minimum witness index.
    """
    n = A.shape[1]
    first = -1
    feasible = 0
    checked = 0
    pos = lo
    while pos < hi:
        if early_exit and rank > 0 and flags[:rank].any():
            break
        end = min(pos + batch_size, hi)
        ks = np.arange(pos, end, dtype=np.int64)
        u, t = decode_indices(ks, d, n)
        v = center + build_offsets(u, t, rho, cos_tab, sin_tab)
        acc = np.zeros((len(ks), A.shape[0]))
        for j in range(n):
            acc += v[:, j : j + 1] * A[:, j]
        feas = (acc <= b_eff).all(axis=1)
        obj = np.zeros(len(ks))
        for j in range(n):
            obj += c[j] * v[:, j]
        refute = feas & (obj > threshold)
        if refute.any():
            if first < 0:
                first = pos + int(np.argmax(refute))
                if early_exit:
                    flags[rank] = 1
            if stop_on_refute:
                idx = first - pos
                feasible += int(feas[: idx + 1].sum())
                checked += idx + 1
                return first, feasible, checked
        feasible += int(feas.sum())
        checked += len(ks)
        pos = end
    return first, feasible, checked
