"""Monte Carlo box-dimension estimates for the supported process families.

Per path, the estimator builds a point cloud that samples the target set
at the best available resolution, using exact set identities of the
composed process:

* range:       X([0, T]) equals the outer range Y([0, E_T]), so the cloud
               is every outer sample on the operational-time interval;
* graph:       Gr X([0, T]) decomposes into horizontal flat segments (the
               sampled (t, X) pairs) plus the image {(D(x), Y(x))} of the
               clock interval, so both sample families are stacked;
* parametric:  {(E_t, X(t))} sweeps exactly the outer graph over
               [0, E_T], sampled as (x_j, Y(x_j));
* z_range:     the clock-space set {(D(x), Y(x)) : x <= 1}.

Box-count curves are pooled across paths, one common fit window is chosen
on the mean curve, and the reported estimate is the mean of per-path
slopes over that window.  Everything is a pure function of (spec, seed,
path index), so results are identical for any worker count.
"""

import multiprocessing
from dataclasses import dataclass

import numpy as np

from .boxcount import (DimEstimate, FitPolicy, PointCloud, _ls_slope,
                       box_count, select_window)
from .dimensions import UnsupportedModelError, theoretical_dimensions
from .processes import (GridPath, ModelSpec, compose_time_change,
                        invert_subordinator, simulate_coupled_shlesinger,
                        simulate_fbm_outer, simulate_levy_outer,
                        simulate_subordinator)
from .streams import RandomStream

__all__ = ["MonteCarloResult", "monte_carlo_dimension", "simulate_model_path",
           "target_cloud", "TARGETS"]

TARGETS = ("range", "graph", "parametric", "z_range")

_DEFAULT_KMAX = {1: 20, 2: 17, 3: 13}


@dataclass
class MonteCarloResult:
    estimate: DimEstimate
    theoretical: float | None
    gap: float | None
    provenance: str | None
    per_path_slopes: np.ndarray


@dataclass
class PathBundle:
    """One simulated path with every piece the cloud builders need."""

    spec: ModelSpec
    t_grid: np.ndarray
    x_composed: np.ndarray     # X(t) on the t-grid, shape (n+1, d)
    e_values: np.ndarray
    sub_values: np.ndarray     # D on the x-grid
    outer_points: np.ndarray   # Y on the x-grid, shape (n_x, d)
    dx: float
    passage_horizon: int       # index j with x_j = E_T


def simulate_model_path(spec: ModelSpec, n, stream: RandomStream,
                        need_unit_x=False) -> PathBundle:
    """Simulate one path of the model on an (n+1)-point t-grid over [0, T].

    The clock grid step equals the t-grid step; ``need_unit_x`` extends the
    clock simulation to operational time x = 1 for clock-space targets.
    """
    T = spec.horizon
    dt = T / n
    t_grid = np.arange(n + 1) * dt
    dx = dt
    x_min = max(1.0 + 2 * dx, 0.0) if need_unit_x else 0.0

    if spec.inner is None:
        # no time change: E_t = t
        outer = _plain_outer(spec, n + 1, dt, stream)
        e = t_grid.copy()
        return PathBundle(spec, t_grid, outer.points, e, t_grid,
                          outer.points, dx, n)

    if spec.coupling == "shlesinger":
        sub, outer = simulate_coupled_shlesinger(spec.beta, T, dx, stream,
                                                 x_min=x_min)
    else:
        sub = simulate_subordinator(spec.inner_atoms(), T, dx, stream,
                                    x_min=x_min)
        n_x = len(sub.values)
        if spec.coupling == "identity":
            outer = GridPath(dt=dx, points=sub.values,
                             meta={"process": "identity"})
        elif spec.outer == "fbm":
            outer = simulate_fbm_outer(spec.hurst, spec.d, n_x, dx, stream)
        else:
            outer = simulate_levy_outer(spec.alpha, spec.d, n_x, dx, stream)
    tc = invert_subordinator(sub, dt, T)
    x = compose_time_change(outer, tc)
    return PathBundle(spec, t_grid, x.points, tc.e_values, sub.values,
                      outer.points, dx, int(tc.passage_index[-1]))


def _plain_outer(spec, n_points, dt, stream):
    if spec.outer == "fbm":
        return simulate_fbm_outer(spec.hurst, spec.d, n_points, dt, stream)
    return simulate_levy_outer(spec.alpha, spec.d, n_points, dt, stream)


def target_cloud(bundle: PathBundle, target) -> PointCloud:
    """Build the estimation cloud for one target set from a simulated path."""
    jT = bundle.passage_horizon
    d = bundle.outer_points.shape[1]
    if target == "range":
        return PointCloud(d, bundle.outer_points[: jT + 1])
    if target == "graph":
        sampled = np.column_stack([bundle.t_grid, bundle.x_composed])
        if bundle.spec.inner is None:
            return PointCloud(d + 1, sampled)
        active = np.column_stack(
            [bundle.sub_values[:jT], bundle.outer_points[:jT]]
        )
        return PointCloud(d + 1, np.vstack([sampled, active]))
    if target == "parametric":
        x_grid = np.arange(jT + 1) * bundle.dx
        return PointCloud(d + 1,
                          np.column_stack([x_grid, bundle.outer_points[: jT + 1]]))
    if target == "z_range":
        n_unit = min(int(round(1.0 / bundle.dx)) + 1, len(bundle.sub_values))
        return PointCloud(d + 1,
                          np.column_stack([bundle.sub_values[:n_unit],
                                           bundle.outer_points[:n_unit]]))
    raise ValueError(f"unknown target {target!r}")


def _path_curves(args):
    (spec_dict, targets, n, seed, path_id, k_min, k_max) = args
    spec = ModelSpec.from_dict(spec_dict)
    stream = RandomStream(seed, path_id)
    bundle = simulate_model_path(spec, n, stream,
                                 need_unit_x="z_range" in targets)
    out = {}
    for tgt in targets:
        cloud = target_cloud(bundle, tgt)
        km = k_max if k_max is not None else _DEFAULT_KMAX.get(cloud.dim, 11)
        curve = box_count(cloud, k_min, km)
        out[tgt] = (curve.scales, curve.log2_counts(), len(cloud))
    return path_id, out


def monte_carlo_dimension(spec: ModelSpec, targets, m_paths, n, seed,
                          workers=1, policy: FitPolicy | None = None,
                          k_min=2, k_max=None):
    """Estimate box dimensions of the requested target sets.

    Returns {target: MonteCarloResult}.  ``targets`` may be a string or a
    sequence from ``TARGETS``.  The per-path slope mean and its standard
    error are reported together with the closed-form value when the model
    is covered by the theory table.
    """
    if isinstance(targets, str):
        targets = (targets,)
    targets = tuple(targets)
    for t in targets:
        if t not in TARGETS:
            raise ValueError(f"unknown target {t!r}")
    policy = policy or FitPolicy()
    jobs = [(spec.to_dict(), targets, int(n), int(seed), pid, k_min, k_max)
            for pid in range(m_paths)]
    results = [None] * m_paths
    if workers > 1:
        ctx = multiprocessing.get_context("spawn")
        with ctx.Pool(processes=workers) as pool:
            for pid, curves in pool.imap_unordered(_path_curves, jobs):
                results[pid] = curves
    else:
        for job in jobs:
            pid, curves = _path_curves(job)
            results[pid] = curves

    try:
        report = theoretical_dimensions(spec)
    except UnsupportedModelError:
        report = None

    out = {}
    for tgt in targets:
        scales = results[0][tgt][0]
        logs = np.array([r[tgt][1] for r in results])
        n_pts = max(r[tgt][2] for r in results)
        lo, hi = select_window(scales, logs.mean(axis=0), n_pts, policy)
        kk = scales[lo: hi + 1].astype(float)
        slopes = np.array([_ls_slope(kk, row[lo: hi + 1])[0] for row in logs])
        mean = float(slopes.mean())
        stderr = float(slopes.std(ddof=1) / np.sqrt(len(slopes))) if len(slopes) > 1 else 0.0
        est = DimEstimate(slope=mean, stderr=stderr,
                          window=(int(scales[lo]), int(scales[hi])),
                          n_paths=m_paths)
        theo = prov = gap = None
        if report is not None:
            try:
                theo = report.value(tgt)
                key = {"range": "range", "graph": "graph",
                       "parametric": "parametric", "z_range": "z_range"}[tgt]
                prov = report.provenance.get(key)
                gap = abs(mean - theo)
            except UnsupportedModelError:
                pass
        out[tgt] = MonteCarloResult(est, theo, gap, prov, slopes)
    return out
