"""Closed-form Hausdorff and packing dimensions for every supported model.

Each entry of a report records which formula produced it.  The evaluator
refuses models outside the known case table rather than interpolating.
For all supported models the range and graph are regular fractals
(Hausdorff = packing), so the report carries one value per set with both
names for clarity.
"""

from dataclasses import dataclass, field

from .processes import ModelSpec

__all__ = ["DimensionReport", "UnsupportedModelError", "theoretical_dimensions"]


class UnsupportedModelError(ValueError):
    """The model is outside the proved case table; no value is guessed."""


@dataclass
class DimensionReport:
    range_hausdorff: float
    range_packing: float
    graph_hausdorff: float
    graph_packing: float
    parametric_set_dim: float | None = None
    z_range_dim: float | None = None
    provenance: dict = field(default_factory=dict)

    def validate(self, d):
        assert 0.0 <= self.range_hausdorff <= self.range_packing <= d
        assert 1.0 <= self.graph_hausdorff <= d + 1
        assert 1.0 <= self.graph_packing <= d + 1
        for v in (self.parametric_set_dim, self.z_range_dim):
            if v is not None:
                assert 0.0 <= v <= d + 1

    def value(self, target):
        got = {
            "range": self.range_hausdorff,
            "graph": self.graph_hausdorff,
            "parametric": self.parametric_set_dim,
            "z_range": self.z_range_dim,
        }[target]
        if got is None:
            raise UnsupportedModelError(f"no closed form recorded for target {target!r}")
        return got

    def rows(self):
        out = [
            ("range_hausdorff", self.range_hausdorff),
            ("range_packing", self.range_packing),
            ("graph_hausdorff", self.graph_hausdorff),
            ("graph_packing", self.graph_packing),
        ]
        if self.parametric_set_dim is not None:
            out.append(("parametric_set_dim", self.parametric_set_dim))
        if self.z_range_dim is not None:
            out.append(("z_range_dim", self.z_range_dim))
        return out


def _stable_graph_of_outer(alpha, d):
    """Graph dimension of an alpha-stable Levy motion itself (no time change):
    max{1, alpha} for alpha <= d, else 2 - 1/alpha (d = 1)."""
    if alpha <= d:
        return max(1.0, alpha)
    return 2.0 - 1.0 / alpha


def theoretical_dimensions(spec: ModelSpec) -> DimensionReport:
    """Exact dimension values for the range, graph, parametric set
    {(E_t, X_t)} and the clock-space set Z = {(D(x), Y(x))}.

    Raises UnsupportedModelError for any model outside the case table.
    """
    d = spec.d
    prov = {}

    if spec.coupling == "identity":
        b = spec.beta
        prov["range"] = "range = beta: X = D(E) revisits exactly the clock's range"
        prov["graph"] = "graph = 1: flats plus the diagonal set of dimension beta <= 1"
        prov["parametric"] = "parametric = 1: graph of a monotone function"
        prov["z_range"] = "z_range = beta: diagonal copy {(D, D)} of the clock range"
        rep = DimensionReport(b, b, 1.0, 1.0, parametric_set_dim=1.0,
                              z_range_dim=b, provenance=prov)
        rep.validate(d)
        return rep

    if spec.coupling == "shlesinger":
        b = spec.beta
        a = 2.0 * b
        rng_dim = min(1.0, a)
        z = a if a <= 1.0 else b + 0.5
        graph = max(1.0, b + 0.5)
        par = _stable_graph_of_outer(a, 1)
        prov["range"] = "range = min{1, 2 beta}: marginal jumps are (2 beta)-stable"
        prov["graph"] = "graph = max{1, beta + 1/2} (coupled Gaussian-jump model)"
        prov["z_range"] = "z_range = 2 beta if 2 beta <= 1 else beta + 1/2"
        prov["parametric"] = "parametric = graph dimension of the outer stable motion"
        rep = DimensionReport(rng_dim, rng_dim, graph, graph,
                              parametric_set_dim=par, z_range_dim=z, provenance=prov)
        rep.validate(d)
        return rep

    # uncoupled families
    if spec.outer in ("brownian", "stable"):
        a = spec.alpha
        rng_dim = min(float(d), a)
        prov["range"] = "range = min{d, alpha}: time change preserves range dimensions"
        par = _stable_graph_of_outer(a, d)
        prov["parametric"] = (
            "parametric = graph dim of the outer motion: max{1, alpha} if alpha <= d, "
            "else 2 - 1/alpha"
        )
        if spec.inner is None:
            graph = _stable_graph_of_outer(a, d)
            prov["graph"] = "graph of the outer stable motion (no time change)"
            z = None
        else:
            atoms = spec.inner_atoms()
            b_top = max(b for b, _ in atoms)
            if a <= d:
                graph = max(1.0, a)
                prov["graph"] = "graph = max{1, alpha} (alpha <= d)"
                z = None
                if spec.inner == "stable":
                    z = spec.beta if a <= spec.beta else a
                    prov["z_range"] = "z_range = beta if alpha <= beta else alpha"
            else:
                graph = 1.0 + b_top * (1.0 - 1.0 / a)
                label = "beta_n" if spec.inner == "mixture" else "beta"
                prov["graph"] = (
                    f"graph = 1 + {label} (1 - 1/alpha) (alpha > d = 1; only the "
                    "largest stability index matters)"
                )
                z = graph
                prov["z_range"] = "z_range = graph value (clock-space set, alpha > d = 1)"
            if spec.outer == "brownian" and spec.inner == "stable":
                # specialization worth naming: 1 + beta/2 (d = 1) or 2 (d >= 2)
                prov["graph"] = (
                    "graph = 1 + beta/2 (Brownian outer, d = 1)"
                    if d == 1
                    else "graph = 2 (Brownian outer, d >= 2)"
                )
        rep = DimensionReport(rng_dim, rng_dim, graph, graph,
                              parametric_set_dim=par, z_range_dim=z, provenance=prov)
        rep.validate(d)
        return rep

    if spec.outer == "fbm":
        h = spec.hurst
        rng_dim = min(float(d), 1.0 / h)
        prov["range"] = "range = min{d, 1/H}"
        par = 1.0 / h if h * d >= 1.0 else 1.0 + (1.0 - h) * d
        prov["parametric"] = "parametric = graph dim of fBm: min{1/H, 1 + (1-H) d}"
        if spec.inner is None:
            graph = par
            prov["graph"] = "graph of fBm itself (no time change)"
            z = None
        elif spec.inner == "stable":
            b = spec.beta
            if h * d >= 1.0:
                graph = 1.0 / h
                prov["graph"] = "graph = 1/H (H d >= 1)"
            else:
                graph = b + (1.0 - h * b) * d
                prov["graph"] = "graph = beta + (1 - H beta) d (H d < 1)"
            z = graph
            prov["z_range"] = "z_range = graph value (clock-space set)"
        else:
            raise UnsupportedModelError(
                "mixture clock with an fBm outer process is outside the case table"
            )
        rep = DimensionReport(rng_dim, rng_dim, graph, graph,
                              parametric_set_dim=par, z_range_dim=z, provenance=prov)
        rep.validate(d)
        return rep

    raise UnsupportedModelError(f"no dimension formulas for model {spec!r}")
