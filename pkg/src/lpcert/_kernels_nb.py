"""Numba scan kernel: scalar per-point loop, same operation order as the
numpy batch path, so both backends produce identical bits.

Compiled with nogil so a thread pool of workers runs truly in parallel.
fastmath stays off; reassociation would break cross-backend and
cross-partition bit equality.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def scan_range(
    lo,
    hi,
    A,
    b_eff,
    c,
    center,
    threshold,
    d,
    rho,
    cos_tab,
    sin_tab,
    stop_on_refute,
    early_exit,
    flags,
    rank,
):
    m, n = A.shape
    n_phi = n - 2
    dm1 = d - 1
    stride = np.int64(1)
    for _ in range(n_phi):
        stride *= dm1
    u = np.empty(n_phi, np.int64)
    v = np.empty(n, np.float64)
    first = np.int64(-1)
    feasible = np.int64(0)
    checked = np.int64(0)
    for k in range(lo, hi):
        if early_exit and rank > 0 and (k & 2047) == 0:
            aborted = False
            for r in range(rank):
                if flags[r] != 0:
                    aborted = True
                    break
            if aborted:
                break
        rem = k
        t = rem // stride
        rem -= t * stride
        for j in range(n_phi):
            u[j] = rem % dm1 + 1
            rem //= dm1
        v[0] = center[0] + rho * cos_tab[u[0]]
        prod = 1.0
        for i in range(1, n_phi):
            prod = prod * sin_tab[u[i - 1]]
            v[i] = center[i] + rho * cos_tab[u[i]] * prod
        prod = prod * sin_tab[u[n_phi - 1]]
        v[n - 2] = center[n - 2] + rho * sin_tab[t] * prod
        v[n - 1] = center[n - 1] + rho * cos_tab[t] * prod
        checked += 1
        feas = True
        for i in range(m):
            s = 0.0
            for j in range(n):
                s += A[i, j] * v[j]
            if s > b_eff[i]:
                feas = False
                break
        if feas:
            feasible += 1
            obj = 0.0
            for j in range(n):
                obj += c[j] * v[j]
            if obj > threshold:
                if first < 0:
                    first = np.int64(k)
                    if early_exit:
                        flags[rank] = 1
                if stop_on_refute:
                    break
    return first, feasible, checked
