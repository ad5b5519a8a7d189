"""Box-counting dimension estimation for point clouds.

Counting uses origin-anchored half-open dyadic boxes: the box index of a
point at level k is floor(coordinate * 2^k) per coordinate.  Indices are
quantized once at the finest level and coarsened by bit shifts (exact,
because scaling a float by a power of two is exact), interleaved into
Morton keys and sorted once; a compiled kernel then reads the distinct-box
count at every level in one pass.  Set CTRWFRACTAL_PUREPY=1 to force the
pure-numpy fallback kernels.

The automatic fit window drops coarse scales with fewer than ``min_count``
occupied boxes, scales whose counts exceed ``max_fraction`` of the cloud
size (saturation), and the fine-scale tail where the local log-slope has
collapsed below ``knee_fraction`` of its plateau level (sampling
resolution exhausted).
"""

import os
from dataclasses import dataclass, field

import numpy as np

from .processes import GridPath, TimeChange

if os.environ.get("CTRWFRACTAL_PUREPY"):
    from . import _boxkernel_py as _kernel

    KERNEL = "python"
else:
    try:
        from . import _boxkernel as _kernel

        KERNEL = "cython"
    except ImportError:  # compiled extension unavailable
        from . import _boxkernel_py as _kernel

        KERNEL = "python"

__all__ = [
    "PointCloud",
    "BoxCountCurve",
    "DimEstimate",
    "FitPolicy",
    "ResolutionError",
    "extract_range",
    "extract_graph",
    "extract_parametric_set",
    "box_count",
    "select_window",
    "fit_dimension",
    "KERNEL",
]

_COORD_LIMIT_LOG2 = 40  # reject coordinates beyond +-2^(40-k) at level k


class ResolutionError(RuntimeError):
    """Too few usable scales; rerun with more points per path."""


@dataclass
class PointCloud:
    dim: int
    points: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim == 1:
            pts = pts[:, None]
        if pts.shape[0] == 0:
            raise ValueError("point cloud is empty")
        if pts.shape[1] != self.dim:
            raise ValueError(f"expected {self.dim} columns, got {pts.shape[1]}")
        if not np.isfinite(pts).all():
            raise ValueError("point cloud contains non-finite coordinates")
        self.points = pts

    def __len__(self):
        return len(self.points)


@dataclass
class BoxCountCurve:
    scales: np.ndarray  # levels k (box side 2^-k)
    counts: np.ndarray  # occupied boxes per level
    n_points: int | None = None

    def __post_init__(self):
        self.scales = np.asarray(self.scales, dtype=np.int64)
        self.counts = np.asarray(self.counts, dtype=np.int64)
        if np.any(self.counts <= 0):
            raise ValueError("box counts must be positive")
        if np.any(np.diff(self.counts) < 0):
            raise ValueError("box counts must be nondecreasing in k")

    def log2_counts(self):
        return np.log2(self.counts.astype(float))


@dataclass
class DimEstimate:
    slope: float
    stderr: float
    window: tuple  # (k_lo, k_hi)
    n_paths: int = 1


@dataclass
class FitPolicy:
    min_count: int = 10
    max_fraction: float = 0.1
    knee_fraction: float = 0.9
    min_scales: int = 4
    k_lo: int | None = None  # manual window override
    k_hi: int | None = None


# --------------------------------------------------------------------------
# cloud extraction


def extract_range(path: GridPath) -> PointCloud:
    """The multiset of positions visited by the path (time dropped)."""
    return PointCloud(path.d, path.points)


def extract_graph(path: GridPath) -> PointCloud:
    """The sampled graph {(t_i, X(t_i))}; ambient dimension d + 1."""
    return PointCloud(path.d + 1, np.column_stack([path.t_grid(), path.points]))


def extract_parametric_set(tc: TimeChange, path: GridPath) -> PointCloud:
    """The sampled set {(E_t, X(t))} on the shared t-grid."""
    if len(tc.e_values) != len(path.points):
        raise ValueError(
            f"time change has {len(tc.e_values)} grid points, path has "
            f"{len(path.points)}"
        )
    return PointCloud(path.d + 1, np.column_stack([tc.e_values, path.points]))


# --------------------------------------------------------------------------
# counting


def box_count(cloud: PointCloud, k_min, k_max) -> BoxCountCurve:
    """Occupied-box counts N_k for k = k_min..k_max."""
    k_min, k_max = int(k_min), int(k_max)
    if not k_min < k_max:
        raise ValueError("need k_min < k_max")
    pts = cloud.points
    limit = 2.0 ** (_COORD_LIMIT_LOG2 - k_max)
    amax = float(np.abs(pts).max())
    if amax > limit:
        raise OverflowError(
            f"coordinates up to {amax:.3g} exceed the index range +-2^"
            f"{_COORD_LIMIT_LOG2 - k_max} at level {k_max}"
        )
    fine = np.floor(pts * float(2**k_max)).astype(np.int64)
    # shift each column to be nonnegative; offsets are multiples of the
    # coarsest box so that anchored counts are unchanged at all levels
    step = np.int64(1) << np.int64(k_max - k_min)
    offs = (fine.min(axis=0) // step) * step
    fine -= offs
    c = fine.shape[1]
    widths = np.maximum(fine.max(axis=0), 1)
    bits = int(np.max(np.ceil(np.log2(widths.astype(float) + 1.0))))
    ks = np.arange(k_min, k_max + 1, dtype=np.int64)
    if c <= 3 and c * bits <= 63:
        keys = np.sort(_kernel.morton_pack(np.ascontiguousarray(fine)))
        shifts = (c * (k_max - ks)).astype(np.int64)
        counts = _kernel.multiscale_counts(keys, shifts)
    else:
        counts = _generic_counts(fine, ks, k_max)
    return BoxCountCurve(scales=ks, counts=counts, n_points=len(pts))


def _generic_counts(fine, ks, k_max):
    counts = np.empty(len(ks), dtype=np.int64)
    for i, k in enumerate(ks):
        sh = fine >> np.int64(k_max - k)
        order = np.lexsort(sh.T[::-1])
        srt = sh[order]
        diff = np.any(srt[1:] != srt[:-1], axis=1)
        counts[i] = int(np.count_nonzero(diff)) + 1
    return counts


# --------------------------------------------------------------------------
# slope fitting


def select_window(curve_scales, log2_counts, n_points, policy: FitPolicy):
    """Choose the fit window [k_lo, k_hi] on a (possibly averaged) curve.

    Returns indices into ``curve_scales``.  Raises ResolutionError when
    fewer than ``policy.min_scales`` usable scales remain.
    """
    scales = np.asarray(curve_scales)
    vals = np.asarray(log2_counts, dtype=float)
    if policy.k_lo is not None and policy.k_hi is not None:
        sel = np.flatnonzero((scales >= policy.k_lo) & (scales <= policy.k_hi))
        if len(sel) < policy.min_scales:
            raise ResolutionError("manual window covers too few computed scales")
        return int(sel[0]), int(sel[-1])
    counts = 2.0**vals
    ok = counts >= policy.min_count
    if n_points is not None:
        ok &= counts <= policy.max_fraction * n_points
    idx = np.flatnonzero(ok)
    if len(idx) < policy.min_scales:
        raise ResolutionError(
            f"only {len(idx)} scales have usable counts; increase the number "
            "of points per path"
        )
    runs = np.split(idx, np.flatnonzero(np.diff(idx) != 1) + 1)
    idx = max(runs, key=len)
    if len(idx) < policy.min_scales:
        raise ResolutionError("usable scales are not consecutive")
    d = np.diff(vals[idx])
    if len(d) >= 4:
        plateau = max(np.median(d[i: i + 4]) for i in range(len(d) - 3))
    else:
        plateau = float(np.median(d))
    for q in (policy.knee_fraction, 0.6, None):
        if q is None:
            return int(idx[0]), int(idx[-1])
        good = np.flatnonzero(d >= q * plateau)
        if len(good) == 0:
            continue
        runs = np.split(good, np.flatnonzero(np.diff(good) != 1) + 1)
        best = max(runs, key=len)
        if len(best) + 1 >= policy.min_scales:
            return int(idx[best[0]]), int(idx[best[-1] + 1])
    raise ResolutionError("no stable scaling window found")


def fit_dimension(curve: BoxCountCurve, policy: FitPolicy | None = None) -> DimEstimate:
    """Least-squares slope of log2 N_k against k over the selected window."""
    policy = policy or FitPolicy()
    vals = curve.log2_counts()
    lo, hi = select_window(curve.scales, vals, curve.n_points, policy)
    kk = curve.scales[lo: hi + 1].astype(float)
    cc = vals[lo: hi + 1]
    slope, stderr = _ls_slope(kk, cc)
    return DimEstimate(slope=slope, stderr=stderr,
                       window=(int(curve.scales[lo]), int(curve.scales[hi])))


def _ls_slope(x, y):
    n = len(x)
    xm = x - x.mean()
    sxx = float(np.dot(xm, xm))
    slope = float(np.dot(xm, y)) / sxx
    resid = y - y.mean() - slope * xm
    if n > 2:
        stderr = float(np.sqrt(np.dot(resid, resid) / (n - 2) / sxx))
    else:
        stderr = 0.0
    return slope, stderr
