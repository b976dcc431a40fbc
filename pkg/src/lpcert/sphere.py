"""Regular point lattice on an n-dimensional hypersphere.

The lattice is the intersection grid of d parallels and meridians (poles
excluded) on a radius-rho sphere. Points are addressable two ways:

* by nested enumeration over the angle grid (`enumerate_dedup`, and the
  duplicate-producing variant `enumerate_with_duplicates` kept as an audit
  oracle), or
* by a flat index k in [0, K), K = 2*d*(d-1)**(n-2), via `point_at`, a
  pure function, which is what lets a scan be partitioned across workers
  without materializing anything.

The central contract is that `enumerate_dedup` and `point_at` produce the
same stream bit for bit. Both draw their trigonometry from one shared
cosine/sine table (`angle_tables`), and both multiply factors in the same
order, so equality is structural rather than approximate.

Index convention: the base-(d-1) digit at position j-1 (0-based, least
significant digit varying fastest) drives angle phi_j. The theta index t
in [0, 2d) occupies the most significant position.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from ._kernels_np import build_offsets
from .core import DimensionError

UINT64_MAX = 2**64 - 1

__all__ = [
    "SphereParams",
    "AngleIndex",
    "DedupAudit",
    "cardinality",
    "cardinality_with_duplicates",
    "angle_tables",
    "index_to_angles",
    "angles_to_index",
    "angles_to_point",
    "point_at",
    "enumerate_dedup",
    "enumerate_with_duplicates",
    "dedup_audit",
    "format_point_csv",
]


def _check_nd(n: int, d: int) -> None:
    if n < 3:
        raise ValueError(f"dimension n must be >= 3, got {n}")
    if d < 3:
        raise ValueError(f"number of parallels d must be >= 3, got {d}")


@dataclass(frozen=True)
class SphereParams:
    """Lattice parameters: dimension n >= 3, parallels d >= 3, radius rho > 0."""

    n: int
    d: int
    rho: float = 1.0

    def __post_init__(self):
        _check_nd(self.n, self.d)
        if self.d % 2 == 0:
            warnings.warn(
                f"d={self.d} is even; the lattice construction is stated for an "
                "odd number of parallels and even d is untested territory",
                UserWarning,
                stacklevel=2,
            )
        if not (self.rho > 0 and np.isfinite(self.rho)):
            raise ValueError(f"rho must be positive and finite, got {self.rho}")


@dataclass(frozen=True)
class AngleIndex:
    """Grid coordinates of one lattice point.

    u[j] in [1, d-1] indexes latitude angle phi_{j+1} = u[j]*pi/d;
    t in [0, 2d) indexes the longitude angle theta = t*pi/d.
    """

    u: tuple[int, ...]
    t: int

    def __post_init__(self):
        if len(self.u) < 1:
            raise ValueError("u must hold at least one angle index (n >= 3)")
        if any(uj < 1 for uj in self.u):
            raise ValueError(f"angle indices must be >= 1 (poles excluded), got {self.u}")
        if self.t < 0:
            raise ValueError(f"t must be >= 0, got {self.t}")


@dataclass(frozen=True)
class DedupAudit:
    """Comparison of the duplicate-producing and dedup-free enumerations."""

    total_a: int
    duplicates_a: int
    unique_a: int
    count_b: int
    lost_unique: int

    @property
    def lost_fraction(self) -> float:
        return self.lost_unique / self.unique_a


def cardinality(n: int, d: int) -> int:
    """Number of lattice points, K = 2*d*(d-1)**(n-2), checked against uint64.

    Raises OverflowError when K exceeds the 64-bit unsigned range; the set
    grows exponentially with n and such instances are beyond enumeration.
    """
    _check_nd(n, d)
    k = 2 * d * (d - 1) ** (n - 2)
    if k > UINT64_MAX:
        raise OverflowError(
            f"validation set size 2*{d}*({d}-1)**({n}-2) = {k} exceeds the "
            "64-bit unsigned range"
        )
    return k


def cardinality_with_duplicates(n: int, d: int) -> int:
    """Point count of the duplicate-producing enumeration, 2*d*(d+1)**(n-2)."""
    _check_nd(n, d)
    k = 2 * d * (d + 1) ** (n - 2)
    if k > UINT64_MAX:
        raise OverflowError(
            f"duplicate-enumeration size 2*{d}*({d}+1)**({n}-2) = {k} exceeds "
            "the 64-bit unsigned range"
        )
    return k


@lru_cache(maxsize=None)
def angle_tables(d: int) -> tuple[np.ndarray, np.ndarray]:
    """Read-only lookup tables cos(i*pi/d), sin(i*pi/d) for i in [0, 2d).

    Every code path (scalar, numpy batch, numba kernel) indexes these same
    tables, which is what makes their outputs bit-identical.
    """
    angles = np.arange(2 * d, dtype=np.float64) * (np.pi / d)
    cos_tab = np.cos(angles)
    sin_tab = np.sin(angles)
    cos_tab.flags.writeable = False
    sin_tab.flags.writeable = False
    return cos_tab, sin_tab


def index_to_angles(k: int, params: SphereParams) -> AngleIndex:
    """Mixed-radix decomposition of a flat index into grid coordinates.

    t is the quotient by (d-1)**(n-2); the base-(d-1) digits below it give
    u_1 (least significant, fastest varying) through u_{n-2}, each shifted
    into [1, d-1].
    """
    big_k = cardinality(params.n, params.d)
    if not 0 <= k < big_k:
        raise IndexError(f"point index {k} outside [0, {big_k})")
    dm1 = params.d - 1
    n_phi = params.n - 2
    t, rem = divmod(int(k), dm1**n_phi)
    u = []
    for _ in range(n_phi):
        rem, digit = divmod(rem, dm1)
        u.append(digit + 1)
    return AngleIndex(u=tuple(u), t=t)


def angles_to_index(angles: AngleIndex, params: SphereParams) -> int:
    """Inverse of index_to_angles."""
    _validate_angles(angles, params)
    dm1 = params.d - 1
    k = angles.t
    for uj in reversed(angles.u):
        k = k * dm1 + (uj - 1)
    return k


def _validate_angles(angles: AngleIndex, params: SphereParams) -> None:
    if len(angles.u) != params.n - 2:
        raise DimensionError(
            f"expected {params.n - 2} latitude indices, got {len(angles.u)}"
        )
    if any(not 1 <= uj <= params.d - 1 for uj in angles.u):
        raise ValueError(f"latitude indices must lie in [1, {params.d - 1}]: {angles.u}")
    if not 0 <= angles.t < 2 * params.d:
        raise ValueError(f"theta index must lie in [0, {2 * params.d}): {angles.t}")


def angles_to_point(angles: AngleIndex, params: SphereParams) -> np.ndarray:
    """Cartesian coordinates of a grid point (sphere centered at the origin).

    v_1 = rho*cos(phi_1); v_j = rho*cos(phi_j) * prod_{i<j} sin(phi_i) for
    j = 2..n-2; the last two coordinates carry sin/cos of theta times the
    full sine product. The running product accumulates in increasing i
    order.
    """
    _validate_angles(angles, params)
    cos_tab, sin_tab = angle_tables(params.d)
    n = params.n
    rho = float(params.rho)
    u = angles.u
    v = np.empty(n)
    v[0] = rho * cos_tab[u[0]]
    prod = 1.0
    for i in range(1, n - 2):
        prod = prod * sin_tab[u[i - 1]]
        v[i] = rho * cos_tab[u[i]] * prod
    prod = prod * sin_tab[u[n - 3]]
    v[n - 2] = rho * sin_tab[angles.t] * prod
    v[n - 1] = rho * cos_tab[angles.t] * prod
    return v


def point_at(k: int, params: SphereParams) -> np.ndarray:
    """Lattice point number k: the pure index->point map.

    Returns the sphere-relative offset (centered at the origin); a
    validator shifts it by the candidate point. Equals element k of the
    enumerate_dedup stream, bit for bit.
    """
    return angles_to_point(index_to_angles(k, params), params)


def _iter_digit_blocks(ranges, block_size: int) -> Iterator[np.ndarray]:
    # itertools.product varies the LAST range fastest, matching the nested
    # loops (theta outermost, phi_1 innermost).
    it = itertools.product(*ranges)
    while True:
        chunk = list(itertools.islice(it, block_size))
        if not chunk:
            return
        yield np.array(chunk, dtype=np.int64)


def _enumerate(params: SphereParams, phi_range: range, block_size: int) -> Iterator[np.ndarray]:
    cos_tab, sin_tab = angle_tables(params.d)
    n_phi = params.n - 2
    ranges = [range(2 * params.d)] + [phi_range] * n_phi
    for arr in _iter_digit_blocks(ranges, block_size):
        t = arr[:, 0]
        u = arr[:, :0:-1]  # columns reversed: (u_1, ..., u_{n-2})
        pts = build_offsets(u, t, float(params.rho), cos_tab, sin_tab)
        pts.flags.writeable = False
        yield from pts


def enumerate_dedup(params: SphereParams, block_size: int = 4096) -> Iterator[np.ndarray]:
    """Stream the K lattice points in canonical nested-loop order.

    The stream equals [point_at(0), ..., point_at(K-1)] element for
    element. Latitude indices run over [1, d-1] so the degenerate pole
    angles (sin = 0) never occur and no duplicates are produced.
    """
    cardinality(params.n, params.d)  # overflow guard
    return _enumerate(params, range(1, params.d), block_size)


def enumerate_with_duplicates(params: SphereParams, block_size: int = 4096) -> Iterator[np.ndarray]:
    """Stream the raw angle grid including pole angles (audit oracle only).

    Latitude indices run over [0, d], so rows with sin(phi_i) = 0 collapse
    trailing coordinates and the stream of 2*d*(d+1)**(n-2) points contains
    massive duplication. Kept as the reference against which the dedup-free
    enumeration is audited.
    """
    cardinality_with_duplicates(params.n, params.d)  # overflow guard
    return _enumerate(params, range(0, params.d + 1), block_size)


def _min_cheb_dists(points: np.ndarray, ref: np.ndarray) -> np.ndarray:
    """Per row of points, the smallest max-coordinate distance to ref.

    Blocked so the intermediate distance tensor stays around 64 MB no
    matter the input sizes (the work is quadratic either way).
    """
    out = np.empty(len(points))
    block = max(1, 8_000_000 // max(1, ref.shape[0] * ref.shape[1]))
    for lo in range(0, len(points), block):
        hi = min(lo + block, len(points))
        diff = np.abs(points[lo:hi, None, :] - ref[None, :, :])
        out[lo:hi] = diff.max(axis=2).min(axis=1)
    return out


def dedup_audit(
    params: SphereParams,
    tol: float = 1e-9,
    max_points: int = 100_000,
) -> DedupAudit:
    """Materialize both enumerations and count duplicates and lost points.

    Two points are duplicates when their max-coordinate distance is <= tol.
    unique_a counts greedy leaders of the duplicate-producing stream;
    lost_unique counts leaders with no tol-match in the dedup-free stream.
    Every dedup-free point must tol-match the raw stream (raises otherwise).

    Matching is exhaustive pairwise (quadratic), so this is a diagnostic
    for small grids; max_points guards against accidental big inputs.
    """
    if tol <= 0:
        raise ValueError("tol must be > 0")
    total_a = cardinality_with_duplicates(params.n, params.d)
    if total_a > max_points:
        raise ValueError(
            f"duplicate enumeration would materialize {total_a} points, "
            f"above the cap of {max_points}"
        )
    pts_a = np.array(list(enumerate_with_duplicates(params)))
    pts_b = np.array(list(enumerate_dedup(params)))

    leaders = np.empty_like(pts_a)
    n_lead = 0
    for p in pts_a:
        if n_lead == 0 or np.abs(leaders[:n_lead] - p).max(axis=1).min() > tol:
            leaders[n_lead] = p
            n_lead += 1
    leaders = leaders[:n_lead]

    lost = int((_min_cheb_dists(leaders, pts_b) > tol).sum())

    if (_min_cheb_dists(pts_b, pts_a) > tol).any():
        raise AssertionError(
            "containment violated: a dedup-free point has no match in the "
            "raw enumeration"
        )

    return DedupAudit(
        total_a=int(total_a),
        duplicates_a=int(total_a) - n_lead,
        unique_a=n_lead,
        count_b=len(pts_b),
        lost_unique=lost,
    )


def format_point_csv(point: np.ndarray) -> str:
    """One CSV line, coordinates at 17 significant digits."""
    return ",".join("%.17g" % x for x in point)
