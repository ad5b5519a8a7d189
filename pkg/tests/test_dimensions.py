import numpy as np
import pytest

from ctrwfractal import (ModelSpec, UnsupportedModelError,
                         theoretical_dimensions)


def test_brownian_time_change_values():
    rep = theoretical_dimensions(ModelSpec.brownian_time_change(0.8))
    assert rep.graph_hausdorff == pytest.approx(1.4)
    assert rep.graph_packing == pytest.approx(1.4)
    assert rep.range_hausdorff == pytest.approx(1.0)
    assert rep.parametric_set_dim == pytest.approx(1.5)
    rep2 = theoretical_dimensions(ModelSpec.brownian_time_change(0.8, d=2))
    assert rep2.graph_hausdorff == pytest.approx(2.0)
    assert rep2.range_hausdorff == pytest.approx(2.0)


def test_stable_time_change_values():
    rep = theoretical_dimensions(ModelSpec.stable_time_change(1.5, 0.8))
    assert rep.graph_hausdorff == pytest.approx(1 + 0.8 * (1 - 1 / 1.5))
    assert rep.range_hausdorff == pytest.approx(1.0)
    assert rep.parametric_set_dim == pytest.approx(2 - 1 / 1.5)
    # alpha <= d branch
    rep = theoretical_dimensions(ModelSpec.stable_time_change(0.8, 0.5))
    assert rep.graph_hausdorff == pytest.approx(1.0)
    assert rep.range_hausdorff == pytest.approx(0.8)
    rep = theoretical_dimensions(ModelSpec.stable_time_change(2.0, 0.5, d=3))
    assert rep.range_hausdorff == pytest.approx(2.0)
    assert rep.graph_hausdorff == pytest.approx(2.0)


def test_identity_coupling_values():
    rep = theoretical_dimensions(ModelSpec.identity_coupling(0.7))
    assert rep.range_hausdorff == pytest.approx(0.7)
    assert rep.graph_hausdorff == pytest.approx(1.0)


def test_shlesinger_values():
    rep = theoretical_dimensions(ModelSpec.shlesinger_coupling(0.8))
    assert rep.graph_hausdorff == pytest.approx(1.3)
    assert rep.range_hausdorff == pytest.approx(1.0)
    rep = theoretical_dimensions(ModelSpec.shlesinger_coupling(0.4))
    assert rep.graph_hausdorff == pytest.approx(1.0)
    assert rep.range_hausdorff == pytest.approx(0.8)
    assert rep.z_range_dim == pytest.approx(0.8)


def test_mixture_depends_only_on_top_index():
    a = theoretical_dimensions(ModelSpec.mixture_time_change([(0.5, 1.0), (0.8, 1.0)]))
    b = theoretical_dimensions(ModelSpec.mixture_time_change([(0.3, 2.0), (0.8, 0.5)]))
    assert a.graph_hausdorff == pytest.approx(1.4)
    assert a.graph_hausdorff == b.graph_hausdorff


def test_fbm_values():
    rep = theoretical_dimensions(ModelSpec.fbm_time_change(0.3, 0.8))
    assert rep.graph_hausdorff == pytest.approx(0.8 + (1 - 0.3 * 0.8) * 1)
    assert rep.range_hausdorff == pytest.approx(1.0)
    rep = theoretical_dimensions(ModelSpec.fbm_time_change(0.6, 0.8, d=2))
    assert rep.graph_hausdorff == pytest.approx(1 / 0.6)
    assert rep.range_hausdorff == pytest.approx(1 / 0.6)


def test_plain_outer_graphs():
    rep = theoretical_dimensions(ModelSpec.plain("brownian"))
    assert rep.graph_hausdorff == pytest.approx(1.5)
    rep = theoretical_dimensions(ModelSpec.plain("fbm", hurst=0.3))
    assert rep.graph_hausdorff == pytest.approx(1.7)


def test_sweep_machine_precision_and_ordering():
    # every covered family, swept over parameters: formulas exact, reports valid
    specs = []
    for beta in np.linspace(0.05, 0.95, 19):
        specs.append(ModelSpec.brownian_time_change(round(beta, 3)))
        specs.append(ModelSpec.identity_coupling(round(beta, 3)))
        specs.append(ModelSpec.shlesinger_coupling(round(beta, 3)))
        for alpha in (0.5, 1.0, 1.5, 2.0):
            specs.append(ModelSpec.stable_time_change(alpha, round(beta, 3)))
            specs.append(ModelSpec.stable_time_change(alpha, round(beta, 3), d=2))
        for h in (0.2, 0.5, 0.8):
            specs.append(ModelSpec.fbm_time_change(h, round(beta, 3)))
            specs.append(ModelSpec.fbm_time_change(h, round(beta, 3), d=2))
    for spec in specs:
        rep = theoretical_dimensions(spec)
        rep.validate(spec.d)
        assert rep.range_hausdorff <= rep.range_packing
        assert rep.graph_hausdorff >= 1.0  # max{1, dim Z} structure


def test_scale_invariance():
    a = theoretical_dimensions(
        ModelSpec.mixture_time_change([(0.5, 1.0), (0.8, 1.0)], alpha=1.5))
    b = theoretical_dimensions(
        ModelSpec.mixture_time_change([(0.5, 7.0), (0.8, 0.01)], alpha=1.5,
                                      horizon=31.0))
    assert a.graph_hausdorff == b.graph_hausdorff
    assert a.range_hausdorff == b.range_hausdorff


def test_monotonicity_sweeps():
    # graph dimension nondecreasing in the top mixture index (alpha > d = 1)
    vals = [
        theoretical_dimensions(
            ModelSpec.mixture_time_change([(0.2, 1.0), (bn, 1.0)], alpha=1.7)
        ).graph_hausdorff
        for bn in np.linspace(0.3, 0.95, 14)
    ]
    assert np.all(np.diff(vals) >= 0)
    # fbm graph nonincreasing in H while H d < 1
    vals = [
        theoretical_dimensions(ModelSpec.fbm_time_change(h, 0.8)).graph_hausdorff
        for h in np.linspace(0.05, 0.95, 19)
    ]
    assert np.all(np.diff(vals) <= 1e-12)


def test_unsupported_models_fail_loudly():
    with pytest.raises(UnsupportedModelError):
        theoretical_dimensions(
            ModelSpec("fbm", "mixture", hurst=0.4,
                      mixture=((0.3, 1.0), (0.6, 1.0))))
    rep = theoretical_dimensions(ModelSpec.plain("stable", alpha=1.5))
    with pytest.raises(UnsupportedModelError):
        rep.value("z_range")


def test_table_runtime_under_one_second():
    import time

    t0 = time.monotonic()
    for beta in np.linspace(0.05, 0.95, 50):
        for alpha in (0.5, 1.0, 1.5, 2.0):
            theoretical_dimensions(ModelSpec.stable_time_change(alpha, round(beta, 4)))
        theoretical_dimensions(ModelSpec.shlesinger_coupling(round(beta, 4)))
        theoretical_dimensions(ModelSpec.fbm_time_change(0.4, round(beta, 4)))
    assert time.monotonic() - t0 < 1.0
