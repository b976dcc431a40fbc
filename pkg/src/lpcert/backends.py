"""Scan-kernel backend selection.

Two interchangeable engines drive the hot loop: a numba-compiled scalar
kernel (default when numba is importable) and a vectorized pure-numpy
fallback. Both produce bit-identical verdicts, witnesses, and counters.

Selection order: explicit `backend=` argument, then the LPCERT_BACKEND
environment variable ("numba", "numpy", or "auto"), then auto-detection.
"""

from __future__ import annotations

import os
import warnings

import numpy as np

from . import _kernels_np

BACKEND_ENV = "LPCERT_BACKEND"
BACKENDS = ("numba", "numpy")

_numba_scan = None
_numba_failed = False


def _load_numba_scan():
    global _numba_scan, _numba_failed
    if _numba_scan is None and not _numba_failed:
        try:
            from . import _kernels_nb

            _numba_scan = _kernels_nb.scan_range
        except ImportError:
            _numba_failed = True
    return _numba_scan


def numba_available() -> bool:
    return _load_numba_scan() is not None


def resolve_backend(backend: str | None = None) -> str:
    """Pick the scan backend: argument > LPCERT_BACKEND env var > auto."""
    choice = backend or os.environ.get(BACKEND_ENV, "auto")
    choice = choice.lower()
    if choice == "auto":
        return "numba" if numba_available() else "numpy"
    if choice not in BACKENDS:
        raise ValueError(f"unknown backend {choice!r}, expected one of {BACKENDS} or 'auto'")
    if choice == "numba" and not numba_available():
        warnings.warn("numba backend requested but numba is unavailable; using numpy")
        return "numpy"
    return choice


def scan_fn(backend: str):
    """The scan_range callable for a resolved backend name."""
    if backend == "numba":
        fn = _load_numba_scan()
        if fn is None:
            raise RuntimeError("numba backend not available")
        return fn
    return _kernels_np.scan_range


def warm_up(backend: str) -> None:
    """Trigger JIT compilation outside any timed or threaded region.

    Argument mutability mirrors real scan calls (A, c, and the angle
    tables arrive read-only) so numba compiles exactly the signature the
    validators use.
    """
    if backend != "numba":
        return
    fn = scan_fn(backend)
    A = np.zeros((1, 3))
    c = np.zeros(3)
    tabs = np.zeros(6)
    for arr in (A, c, tabs):
        arr.flags.writeable = False
    flags = np.zeros(1, dtype=np.int8)
    fn(0, 0, A, np.zeros(1), c, np.zeros(3), 0.0, 3, 1.0, tabs, tabs, True, False, flags, 0)
