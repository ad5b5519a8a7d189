"""Command-line interface.

Subcommands: ``simulate`` (emit path CSVs), ``boxcount`` (count and fit a
cloud or a model), ``theory`` (closed-form dimension table), ``experiment``
(run a config suite), ``convergence`` (discrete CTRW limit study).

Exit codes: 0 all checks passed, 1 any failure, 2 configuration error.
"""

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import pathio
from .boxcount import FitPolicy, PointCloud, box_count, fit_dimension
from .dimensions import UnsupportedModelError, theoretical_dimensions
from .experiments import (ConfigError, ExperimentConfig, convergence_study,
                          emit_theory_table, run_experiments)
from .montecarlo import monte_carlo_dimension, simulate_model_path
from .processes import ModelSpec
from .streams import RandomStream


def _load_model(arg):
    if arg.startswith("@"):
        data = json.loads(Path(arg[1:]).read_text())
    else:
        data = json.loads(arg)
    return ModelSpec.from_dict(data)


def _cmd_simulate(args):
    spec = _load_model(args.model)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for pid in range(args.paths):
        stream = RandomStream(args.seed, pid)
        bundle = simulate_model_path(spec, args.n, stream)
        from .processes import GridPath, SubordinatorPath, TimeChange

        gp = GridPath(dt=spec.horizon / args.n, points=bundle.x_composed,
                      meta={"model": spec.to_dict()})
        with open(out / f"path_{pid:04d}.csv", "w", encoding="utf-8",
                  newline="\n") as fh:
            pathio.write_grid_path(gp, fh)
        if spec.inner is not None:
            sub = SubordinatorPath(dx=bundle.dx, values=bundle.sub_values)
            with open(out / f"subordinator_{pid:04d}.csv", "w",
                      encoding="utf-8", newline="\n") as fh:
                pathio.write_subordinator_path(sub, fh)
            tc = TimeChange(dt=gp.dt, dx=bundle.dx, e_values=bundle.e_values,
                            passage_index=(bundle.e_values / bundle.dx + 0.5).astype(np.int64))
            with open(out / f"timechange_{pid:04d}.csv", "w",
                      encoding="utf-8", newline="\n") as fh:
                pathio.write_time_change(tc, fh)
    print(f"wrote {args.paths} path(s) to {out}")
    return 0


def _cmd_boxcount(args):
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    policy = FitPolicy(k_lo=args.k_lo, k_hi=args.k_hi)
    theoretical = gap = None
    if args.cloud:
        with open(args.cloud, encoding="utf-8") as fh:
            pts = pathio.read_point_cloud_csv(fh)
        cloud = PointCloud(pts.shape[1], pts)
        curve = box_count(cloud, args.kmin, args.kmax)
        est = fit_dimension(curve, policy)
        counts = curve.counts.astype(float)
        scales = curve.scales
        n_paths = 1
    elif args.model:
        spec = _load_model(args.model)
        res = monte_carlo_dimension(spec, args.target, args.paths, args.n,
                                    args.seed, workers=args.workers,
                                    policy=policy)[args.target]
        est = res.estimate
        theoretical, gap = res.theoretical, res.gap
        scales = counts = None
        n_paths = args.paths
    else:
        print("boxcount needs --cloud or --model", file=sys.stderr)
        return 2
    if scales is not None:
        lines = ["k,N_k"] + [f"{int(k)},{c!r}" for k, c in zip(scales, counts)]
        (out / "curve.csv").write_text("\n".join(lines) + "\n")
    est_line = ",".join(
        [
            repr(est.slope),
            repr(est.stderr),
            str(est.window[0]),
            str(est.window[1]),
            str(n_paths),
            "" if theoretical is None else repr(theoretical),
            "" if gap is None else repr(gap),
        ]
    )
    (out / "estimate.csv").write_text(
        "slope,stderr,k_lo,k_hi,n_paths,theoretical,gap\n" + est_line + "\n"
    )
    print(f"slope = {est.slope:.4f} +- {est.stderr:.4f} over k in {est.window}")
    if theoretical is not None:
        print(f"theoretical = {theoretical:.4f}, gap = {gap:.4f}")
    return 0


def _cmd_theory(args):
    if args.model:
        spec = _load_model(args.model)
        try:
            rep = theoretical_dimensions(spec)
        except UnsupportedModelError as exc:
            print(f"unsupported model: {exc}", file=sys.stderr)
            return 2
        rows = [("model", q, v, rep.provenance.get(q.split("_")[0], ""))
                for q, v in rep.rows()]
        print(f"{'quantity':22s} {'value':>10s}  provenance")
        for _, q, v, prov in rows:
            print(f"{q:22s} {v:10.6f}  {prov}")
        if args.out:
            lines = ["quantity,value,provenance"]
            lines += [f"{q},{v!r},{prov.replace(',', ';')}" for _, q, v, prov in rows]
            Path(args.out).write_text("\n".join(lines) + "\n")
    else:
        path = args.out or "theory_table.csv"
        rows = emit_theory_table(path)
        width = max(len(r[0]) for r in rows)
        print(f"{'model':{width}s} {'quantity':22s} {'value':>10s}")
        for label, quantity, value, _ in rows:
            print(f"{label:{width}s} {quantity:22s} {value:10.6f}")
        print(f"table written to {path}")
    return 0


def _cmd_experiment(args):
    try:
        config = ExperimentConfig.load(args.config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    if args.seed is not None:
        for entry in config.experiments:
            entry.seed = args.seed
    out = args.out or config.output_dir or "experiment_out"
    report = run_experiments(config, out, workers=args.workers,
                             tolerance_scale=args.tolerance_scale)
    print(report.to_text())
    print(f"report written to {Path(out) / 'report.csv'}")
    return 0 if report.all_passed else 1


def _cmd_convergence(args):
    scales = [float(s) for s in args.scales.split(",")]
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    rows = convergence_study(args.beta, scales, args.replicates, args.seed,
                             out / "convergence.csv")
    for c, ks in rows:
        print(f"c = {c:10.0f}  KS = {ks:.4f}")
    decreasing = all(b[1] <= a[1] for a, b in zip(rows, rows[1:]))
    print("monotone nonincreasing:", decreasing)
    return 0 if decreasing else 1


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="ctrwfractal",
        description="Simulate time-changed processes and verify their "
                    "fractal dimensions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="emit simulated path CSVs")
    p.add_argument("--model", required=True, help="model JSON (or @file)")
    p.add_argument("--n", type=int, default=4096, help="grid steps")
    p.add_argument("--paths", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="paths_out")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("boxcount", help="box-count a cloud CSV or a model")
    p.add_argument("--cloud", help="point-cloud CSV")
    p.add_argument("--model", help="model JSON (or @file)")
    p.add_argument("--target", default="graph",
                   choices=["range", "graph", "parametric", "z_range"])
    p.add_argument("--n", type=int, default=1 << 16)
    p.add_argument("--paths", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--kmin", type=int, default=2)
    p.add_argument("--kmax", type=int, default=16)
    p.add_argument("--k-lo", type=int, default=None, help="manual fit window")
    p.add_argument("--k-hi", type=int, default=None)
    p.add_argument("--out", default="boxcount_out")
    p.set_defaults(func=_cmd_boxcount)

    p = sub.add_parser("theory", help="closed-form dimension table")
    p.add_argument("--model", help="model JSON (or @file); omit for the full table")
    p.add_argument("--out", help="CSV output path")
    p.set_defaults(func=_cmd_theory)

    p = sub.add_parser("experiment", help="run a config-driven suite")
    p.add_argument("--config", required=True)
    p.add_argument("--seed", type=int, default=None,
                   help="override every experiment seed")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--tolerance-scale", type=float, default=1.0)
    p.set_defaults(func=_cmd_experiment)

    p = sub.add_parser("convergence", help="discrete CTRW convergence study")
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--scales", default="100,1000,10000",
                   help="comma-separated count horizons")
    p.add_argument("--replicates", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="convergence_out")
    p.set_defaults(func=_cmd_convergence)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, json.JSONDecodeError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
