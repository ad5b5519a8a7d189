"""Configuration-driven experiment runner.

A config is a JSON document:

    {
      "experiments": [
        {
          "name": "brownian_graph",
          "model": {"outer": "brownian", "inner": "stable", "beta": 0.8},
          "targets": ["graph", "parametric"],
          "m_paths": 20,
          "n": 1048576,
          "seed": 2024,
          "tolerance": {"graph": 0.15, "parametric": 0.15},
          "notes": "free text, ignored"
        }
      ]
    }

Every number in the output is a pure function of (config, seed): report
CSVs are byte-identical across reruns and across worker counts.  Completed
experiments are cached in the output directory under a hash of their
config entry, so interrupted suites resume without recomputation.  Wall
times appear only in the human-readable table, never in the CSV.
"""

import hashlib
import json
import time
from dataclasses import dataclass, field
from pathlib import Path

from scipy.special import gamma as gamma_fn

from .dimensions import UnsupportedModelError, theoretical_dimensions
from .ks import ks_statistic
from .montecarlo import monte_carlo_dimension
from .processes import ModelSpec, count_renewals
from .sampling import sample_one_sided_stable, sample_triangular_waiting
from .streams import RandomStream

__all__ = [
    "ConfigError",
    "ExperimentConfig",
    "ExperimentReport",
    "run_experiments",
    "theory_table_rows",
    "emit_theory_table",
    "convergence_study",
]


class ConfigError(ValueError):
    pass


@dataclass
class ExperimentEntry:
    name: str
    model: ModelSpec
    targets: tuple
    m_paths: int
    n: int
    seed: int
    tolerance: dict
    time_budget_s: float | None = None

    def config_hash(self):
        blob = json.dumps(
            {
                "model": self.model.to_dict(),
                "targets": list(self.targets),
                "m_paths": self.m_paths,
                "n": self.n,
                "seed": self.seed,
                "tolerance": self.tolerance,
            },
            sort_keys=True,
        )
        return hashlib.sha256(blob.encode()).hexdigest()[:16]


@dataclass
class ExperimentConfig:
    experiments: list
    workers: int = 1
    output_dir: str | None = None

    @staticmethod
    def from_dict(data):
        try:
            raw = data["experiments"]
        except KeyError:
            raise ConfigError("config needs an 'experiments' list")
        entries = []
        names = set()
        for item in raw:
            try:
                name = item["name"]
                model = ModelSpec.from_dict(item["model"])
                targets = tuple(item["targets"])
                m_paths = int(item["m_paths"])
                n = int(item["n"])
                seed = int(item["seed"])
                tol = {k: float(v) for k, v in item["tolerance"].items()}
            except (KeyError, TypeError, ValueError) as exc:
                raise ConfigError(f"bad experiment entry {item.get('name', '?')!r}: {exc}")
            if name in names:
                raise ConfigError(f"duplicate experiment name {name!r}")
            names.add(name)
            if n & (n - 1) or n <= 0:
                raise ConfigError(f"{name}: n must be a power of two, got {n}")
            for t, v in tol.items():
                if v <= 0:
                    raise ConfigError(f"{name}: tolerance for {t} must be positive")
            for t in targets:
                if t not in tol:
                    raise ConfigError(f"{name}: no tolerance given for target {t!r}")
            entries.append(
                ExperimentEntry(name, model, targets, m_paths, n, seed, tol,
                                item.get("time_budget_s"))
            )
        return ExperimentConfig(
            experiments=entries,
            workers=int(data.get("workers", 1)),
            output_dir=data.get("output_dir"),
        )

    @staticmethod
    def load(path):
        try:
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}")
        return ExperimentConfig.from_dict(data)


@dataclass
class ReportRow:
    name: str
    target: str
    theoretical: float | None
    provenance: str | None
    estimate: float | None
    stderr: float | None
    gap: float | None
    tolerance: float
    status: str  # "pass" | "fail" | "error" | "timed-out"
    wall_time_s: float = 0.0


@dataclass
class ExperimentReport:
    rows: list = field(default_factory=list)

    @property
    def all_passed(self):
        return all(r.status == "pass" for r in self.rows)

    def to_csv(self):
        lines = ["name,target,theoretical,provenance,estimate,stderr,gap,tolerance,status"]
        for r in self.rows:
            prov = (r.provenance or "").replace(",", ";")
            lines.append(
                ",".join(
                    [
                        r.name,
                        r.target,
                        _fmt_opt(r.theoretical),
                        prov,
                        _fmt_opt(r.estimate),
                        _fmt_opt(r.stderr),
                        _fmt_opt(r.gap),
                        repr(r.tolerance),
                        r.status,
                    ]
                )
            )
        return "\n".join(lines) + "\n"

    def to_text(self):
        head = f"{'experiment':28s} {'target':11s} {'theory':>8s} {'estimate':>9s} " \
               f"{'stderr':>7s} {'gap':>7s} {'tol':>6s} {'status':>9s} {'wall[s]':>8s}"
        lines = [head, "-" * len(head)]
        for r in self.rows:
            lines.append(
                f"{r.name:28s} {r.target:11s} "
                f"{_fnum(r.theoretical):>8s} {_fnum(r.estimate):>9s} "
                f"{_fnum(r.stderr):>7s} {_fnum(r.gap):>7s} "
                f"{r.tolerance:6.3f} {r.status:>9s} {r.wall_time_s:8.1f}"
            )
        return "\n".join(lines) + "\n"


def _fmt_opt(v):
    return "" if v is None else repr(float(v))


def _fnum(v):
    return "-" if v is None else f"{v:.4f}"


def run_experiments(config: ExperimentConfig, out_dir, workers=None,
                    tolerance_scale=1.0) -> ExperimentReport:
    """Run (or resume) every experiment and write report.csv / report.txt."""
    out = Path(out_dir)
    results_dir = out / "results"
    results_dir.mkdir(parents=True, exist_ok=True)
    workers = workers or config.workers
    report = ExperimentReport()
    for entry in config.experiments:
        cache = results_dir / f"{entry.name}.json"
        cached = None
        if cache.exists():
            try:
                blob = json.loads(cache.read_text())
                if blob.get("config_hash") == entry.config_hash():
                    cached = blob
            except (json.JSONDecodeError, OSError):
                cached = None
        if cached is None:
            blob = _run_single(entry, workers, tolerance_scale)
            cache.write_text(json.dumps(blob, indent=1, sort_keys=True))
        else:
            blob = cached
        for row in blob["rows"]:
            report.rows.append(ReportRow(**row))
    (out / "report.csv").write_text(report.to_csv())
    (out / "report.txt").write_text(report.to_text())
    return report


def _run_single(entry: ExperimentEntry, workers, tolerance_scale):
    t0 = time.monotonic()
    rows = []
    status_override = None
    try:
        results = monte_carlo_dimension(
            entry.model, entry.targets, entry.m_paths, entry.n, entry.seed,
            workers=workers,
        )
    except UnsupportedModelError as exc:
        results = None
        status_override = ("error", str(exc))
    wall = time.monotonic() - t0
    if entry.time_budget_s is not None and wall > entry.time_budget_s:
        status_override = ("timed-out", None)
    for tgt in entry.targets:
        tol = entry.tolerance[tgt] * tolerance_scale
        if status_override is not None:
            rows.append(
                ReportRow(entry.name, tgt, None, status_override[1], None,
                          None, None, tol, status_override[0], wall).__dict__
            )
            continue
        res = results[tgt]
        if res.theoretical is None:
            status = "error"
        else:
            status = "pass" if res.gap <= tol else "fail"
        rows.append(
            ReportRow(entry.name, tgt, res.theoretical, res.provenance,
                      res.estimate.slope, res.estimate.stderr, res.gap, tol,
                      status, wall).__dict__
        )
    return {"config_hash": entry.config_hash(), "rows": rows}


# --------------------------------------------------------------------------
# theory table


def _table_models():
    return [
        ("brownian b=0.8 d=1", ModelSpec.brownian_time_change(0.8)),
        ("brownian b=0.8 d=2", ModelSpec.brownian_time_change(0.8, d=2)),
        ("stable a=1.5 b=0.8 d=1", ModelSpec.stable_time_change(1.5, 0.8)),
        ("stable a=0.8 b=0.5 d=1", ModelSpec.stable_time_change(0.8, 0.5)),
        ("stable a=1.5 b=0.8 d=2", ModelSpec.stable_time_change(1.5, 0.8, d=2)),
        ("identity b=0.7", ModelSpec.identity_coupling(0.7)),
        ("shlesinger b=0.8", ModelSpec.shlesinger_coupling(0.8)),
        ("shlesinger b=0.4", ModelSpec.shlesinger_coupling(0.4)),
        ("mixture {0.5,0.8} a=2 d=1", ModelSpec.mixture_time_change([(0.5, 1.0), (0.8, 1.0)])),
        ("fbm H=0.3 b=0.8 d=1", ModelSpec.fbm_time_change(0.3, 0.8)),
        ("fbm H=0.6 b=0.8 d=2", ModelSpec.fbm_time_change(0.6, 0.8, d=2)),
    ]


def theory_table_rows():
    rows = []
    for label, spec in _table_models():
        rep = theoretical_dimensions(spec)
        for quantity, value in rep.rows():
            key = quantity.split("_")[0]
            key = {"range": "range", "graph": "graph", "parametric": "parametric",
                   "z": "z_range"}[key]
            rows.append((label, quantity, value, rep.provenance.get(key, "")))
    return rows


def emit_theory_table(path):
    rows = theory_table_rows()
    lines = ["model,quantity,value,provenance"]
    for label, quantity, value, prov in rows:
        lines.append(f"{label},{quantity},{value!r},{prov.replace(',', ';')}")
    Path(path).write_text("\n".join(lines) + "\n")
    return rows


# --------------------------------------------------------------------------
# CTRW convergence study


def convergence_study(beta, c_list, n_rep, seed, out_path=None):
    """KS distance between the rescaled renewal count and the inverse-clock law.

    Waiting times follow the pure power law P{W > u} = u^(-beta) (u >= 1);
    the count N_c of renewals by time c, rescaled by c^(-beta), converges
    to the inverse of the subordinator with Laplace exponent
    Gamma(1-beta) s^beta, whose value at time 1 has the exact first-passage
    representation E_1 = S^(-beta) / Gamma(1-beta), S one-sided stable.

    Returns list of (c, ks_statistic); writes a CSV when ``out_path``.
    """
    beta = float(beta)
    ref_stream = RandomStream(seed, 0)
    s = sample_one_sided_stable(beta, 4 * n_rep, ref_stream)
    reference = s ** (-beta) / gamma_fn(1.0 - beta)
    rows = []
    for k, c in enumerate(sorted(c_list)):
        stream = RandomStream(seed, k + 1)
        waits = lambda m, st: sample_triangular_waiting(beta, 1.0, m, st)
        counts = count_renewals(waits, float(c), n_rep, stream)
        sample = counts.astype(float) * float(c) ** (-beta)
        rows.append((float(c), ks_statistic(sample, reference)))
    if out_path is not None:
        lines = ["c,ks_statistic"] + [f"{c!r},{ks!r}" for c, ks in rows]
        Path(out_path).write_text("\n".join(lines) + "\n")
    return rows
