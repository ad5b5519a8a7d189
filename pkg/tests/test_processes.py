"""Simulator contract tests: transforms, grid identities, self-similarity."""

import numpy as np
import pytest

from ctrwfractal import (CoverageError, GridPath, ModelSpec, RandomStream,
                         SubordinatorPath, compose_time_change,
                         count_renewals, invert_subordinator,
                         ks_critical_value, ks_statistic,
                         sample_one_sided_stable, sample_symmetric_stable,
                         sample_triangular_waiting,
                         simulate_correlated_jump_walk,
                         simulate_coupled_shlesinger, simulate_ctrw_discrete,
                         simulate_fbm_outer, simulate_levy_outer,
                         simulate_subordinator)
from ctrwfractal.processes import _sample_fgn, _sample_fgn_cholesky

FBM_LAG1_CORR_H07 = 2**0.4 - 1  # 0.3195079107728942


def _stream(k=0):
    return RandomStream(424242, k)


def _sample_D_at(atoms, x0, dx, n_paths, base=0):
    """D(x0) over independent paths via the grid simulator."""
    out = np.empty(n_paths)
    j = int(round(x0 / dx))
    for p in range(n_paths):
        sub = simulate_subordinator(atoms, 1e-12, dx, _stream(base + p),
                                    x_min=x0 + 2 * dx)
        out[p] = sub.values[j]
    return out


# --------------------------------------------------------------------------
# subordinator


def test_subordinator_laplace_beta08():
    d1 = _sample_D_at(0.8, 1.0, 1.0 / 64, 10**4, base=100)
    vals = np.exp(-d1)
    err = 3 * vals.std() / np.sqrt(len(vals))
    assert abs(vals.mean() - np.exp(-1.0)) < err


def test_subordinator_mixture_laplace():
    # psi(1) = 1^0.5 + 1^0.8 = 2
    d1 = _sample_D_at([(0.5, 1.0), (0.8, 1.0)], 1.0, 1.0 / 64, 10**4, base=200)
    vals = np.exp(-d1)
    err = 3 * vals.std() / np.sqrt(len(vals))
    assert abs(vals.mean() - np.exp(-2.0)) < err


def test_subordinator_self_similarity_ks():
    n = 10**4
    d4 = _sample_D_at(0.5, 4.0, 1.0 / 16, n, base=300)
    d1 = _sample_D_at(0.5, 1.0, 1.0 / 16, n, base=300 + n)
    stat = ks_statistic(d4 / 4.0**2, d1)  # index 1/beta = 2
    assert stat < ks_critical_value(n, n, 0.01)


def test_subordinator_path_properties():
    sub = simulate_subordinator(0.7, 1.0, 2.0**-12, _stream(1))
    assert sub.values[0] == 0.0
    assert np.all(np.diff(sub.values) > 0)
    assert sub.final > 1.0


# --------------------------------------------------------------------------
# inversion


def test_invert_identity_subordinator():
    dx = 1.0 / 512
    values = np.arange(2048) * dx  # D(x) = x
    path = SubordinatorPath(dx=dx, values=values)
    tc = invert_subordinator(path, dt=1.0 / 300, T=1.0)
    t = tc.t_grid()
    assert np.all(tc.e_values >= t - 1e-12)
    assert np.all(tc.e_values <= t + dx + 1e-12)


def test_invert_step_path_is_flat():
    dx = 1.0 / 64
    values = np.where(np.arange(256) * dx < 0.5, 0.0, 2.0)
    path = SubordinatorPath(dx=dx, values=values)
    tc = invert_subordinator(path, dt=0.01, T=1.5)
    # all strictly positive horizon times sit inside the single flat
    assert tc.e_values[0] == 0.0
    inner = tc.e_values[1:]
    assert np.all(inner == inner[0])


def test_inverse_grid_identities_random_paths():
    # E at time D(x_j) equals x_j exactly, and D(E_t) >= t, on 100 paths
    dt = 1.0 / 256
    for p in range(100):
        sub = simulate_subordinator(0.8, 1.0, dt, _stream(500 + p))
        tc = invert_subordinator(sub, dt, 1.0)
        # E compose D
        j = np.searchsorted(sub.values, sub.values, side="left")
        assert np.array_equal(j, np.arange(len(sub.values)))
        # D compose E
        t = tc.t_grid()
        assert np.all(sub.values[tc.passage_index] >= t)
        # E_0 = 0, nondecreasing
        assert tc.e_values[0] == 0.0
        assert np.all(np.diff(tc.e_values) >= 0)


def test_invert_coverage_error():
    path = SubordinatorPath(dx=0.01, values=np.array([0.0, 0.1, 0.2]))
    with pytest.raises(CoverageError):
        invert_subordinator(path, 0.01, T=1.0)


def test_probability_E1_positive():
    vals = []
    for p in range(200):
        sub = simulate_subordinator(0.8, 1.0, 1.0 / 256, _stream(700 + p))
        tc = invert_subordinator(sub, 1.0 / 256, 1.0)
        vals.append(tc.e_values[-1])
    assert np.all(np.asarray(vals) > 0)


def test_flats_occupy_growing_fraction_as_grid_refines():
    # fraction of t-steps with no passage advance grows toward 1 with n
    fracs = []
    for n in (2**9, 2**12, 2**15):
        dt = 1.0 / n
        vals = []
        for p in range(20):
            sub = simulate_subordinator(0.8, 1.0, dt, _stream(4200 + p))
            tc = invert_subordinator(sub, dt, 1.0)
            vals.append(1.0 - np.mean(np.diff(tc.passage_index) > 0))
        fracs.append(np.mean(vals))
    assert fracs[0] < fracs[1] < fracs[2]
    assert fracs[-1] > 0.8


def test_timechange_increment_resolution_improves():
    # grid E is nondecreasing and its largest jump shrinks as dt refines
    jumps = []
    for n in (2**10, 2**14):
        dt = 1.0 / n
        sub = simulate_subordinator(0.8, 1.0, dt, _stream(43))
        tc = invert_subordinator(sub, dt, 1.0)
        jumps.append(np.diff(tc.e_values).max())
    assert jumps[1] < jumps[0]


# --------------------------------------------------------------------------
# outer processes


def test_levy_outer_gaussian_variance():
    vals = np.empty(3 * 10**4)
    for p in range(len(vals)):
        path = simulate_levy_outer(2.0, 1, 17, 1.0 / 16, _stream(5900 + int(p)))
        vals[int(p)] = path.points[-1, 0]
    assert abs(vals.var() - 2.0) < 0.04


def test_levy_outer_self_similarity():
    n = 10**4
    a = np.empty(n)
    b = np.empty(n)
    for p in range(n):
        path = simulate_levy_outer(1.5, 1, 33, 1.0 / 16, _stream(20000 + p))
        a[p] = path.points[16, 0]  # Y(1)
        b[p] = path.points[32, 0]  # Y(2)
    stat = ks_statistic(b / 2 ** (1 / 1.5), a)
    assert stat < ks_critical_value(n, n, 0.01)


def test_levy_outer_starts_at_origin():
    for alpha in (0.7, 1.0, 1.9):
        path = simulate_levy_outer(alpha, 3, 8, 0.25, _stream(2))
        assert np.all(path.points[0] == 0.0)


def test_fbm_brownian_whiteness():
    # H = 1/2 gives iid increments: Ljung-Box statistic under the 1% bound
    fgn = _sample_fgn(0.5, 2**14, _stream(3).generator)
    n = len(fgn)
    f = fgn - fgn.mean()
    acf = np.array([np.dot(f[k:], f[:-k]) / np.dot(f, f) for k in range(1, 21)])
    q = n * (n + 2) * np.sum(acf**2 / (n - np.arange(1, 21)))
    assert q < 37.57  # chi-square(20) quantile at 99%


def test_fbm_variance_normalization():
    vals = np.empty(10**4)
    for p in range(len(vals)):
        path = simulate_fbm_outer(0.3, 1, 65, 1.0 / 64, _stream(30000 + int(p)))
        vals[int(p)] = path.points[-1, 0]  # B(1)
    assert abs(vals.var() - 1.0) < 0.03


def test_fbm_increment_correlation():
    # sample ACF of long-memory noise is noisy per path; average replicates
    rhos = []
    for p in range(150):
        path = simulate_fbm_outer(0.7, 1, 2**12 + 1, 1.0, _stream(60000 + p))
        inc = np.diff(path.points[:, 0])
        inc = inc - inc.mean()
        rhos.append(np.dot(inc[1:], inc[:-1]) / np.dot(inc, inc))
    assert abs(np.mean(rhos) - FBM_LAG1_CORR_H07) < 0.02


def test_fbm_cholesky_fallback_matches_covariance():
    rng = _stream(5).generator
    m = 128
    draws = np.array([_sample_fgn_cholesky(0.7, m, rng) for _ in range(4000)])
    assert abs(draws.var() - 1.0) < 0.05
    rho = np.mean(draws[:, 1:] * draws[:, :-1]) / draws.var()
    assert abs(rho - FBM_LAG1_CORR_H07) < 0.03


def test_fbm_h_half_reduces_to_brownian():
    path = simulate_fbm_outer(0.5, 1, 1025, 1.0 / 1024, _stream(6))
    inc = np.diff(path.points[:, 0])
    assert abs(inc.var() * 1024 - 1.0) < 0.2


# --------------------------------------------------------------------------
# coupled model


def test_shlesinger_joint_transform():
    beta = 0.5
    dx = 1.0 / 64
    n_paths = 2 * 10**4
    d1 = np.empty(n_paths)
    y1 = np.empty(n_paths)
    j = int(round(1.0 / dx))
    for p in range(n_paths):
        sub, outer = simulate_coupled_shlesinger(beta, 1e-12, dx,
                                                 _stream(40000 + p),
                                                 x_min=1.0 + 2 * dx)
        d1[p] = sub.values[j]
        y1[p] = outer.points[j, 0]
    for eta, xi in ((0.0, 1.0), (1.0, 0.0), (0.5, 0.7)):
        want = np.exp(-((eta + xi**2) ** beta))
        vals = np.cos(xi * y1) * np.exp(-eta * d1)
        err = 3 * vals.std() / np.sqrt(n_paths)
        assert abs(vals.mean() - want) < err, (eta, xi)
        imag = np.sin(xi * y1) * np.exp(-eta * d1)
        assert abs(imag.mean()) < 3 * imag.std() / np.sqrt(n_paths) + 1e-12


def test_shlesinger_marginal_is_stable_2beta():
    beta = 0.8
    dx = 1.0 / 64
    n_paths = 2 * 10**4
    j = int(round(1.0 / dx))
    y1 = np.empty(n_paths)
    for p in range(n_paths):
        _, outer = simulate_coupled_shlesinger(beta, 1e-12, dx,
                                               _stream(90000 + p),
                                               x_min=1.0 + 2 * dx)
        y1[p] = outer.points[j, 0]
    vals = np.cos(y1)
    want = np.exp(-1.0)  # exp(-|u|^(2 beta)) at u = 1
    assert abs(vals.mean() - want) < 3 * vals.std() / np.sqrt(n_paths)


# --------------------------------------------------------------------------
# composition


def test_compose_identity_time_change_recovers_outer():
    dx = 1.0 / 256
    values = np.arange(1024) * dx
    sub = SubordinatorPath(dx=dx, values=values)
    tc = invert_subordinator(sub, dx, 1.0)
    outer = simulate_levy_outer(2.0, 1, 1024, dx, _stream(7))
    comp = compose_time_change(outer, tc)
    # one-grid-cell shift at most
    diffs = np.abs(comp.points[:-1, 0] - outer.points[: len(comp.points) - 1, 0])
    shifted = np.abs(comp.points[:-1, 0] - outer.points[1: len(comp.points), 0])
    assert np.all(np.minimum(diffs, shifted) < 1e-12)


def test_compose_identity_coupling_dominates_t():
    dt = 1.0 / 2048
    sub = simulate_subordinator(0.7, 1.0, dt, _stream(8))
    tc = invert_subordinator(sub, dt, 1.0)
    outer = GridPath(dt=dt, points=sub.values, meta={})
    comp = compose_time_change(outer, tc)
    t = comp.t_grid()
    assert np.all(comp.points[:, 0] >= t)


def test_compose_flats_give_constant_segments():
    dt = 1.0 / 1024
    sub = simulate_subordinator(0.6, 1.0, dt, _stream(9))
    tc = invert_subordinator(sub, dt, 1.0)
    outer = simulate_levy_outer(2.0, 1, len(sub.values), dt, _stream(10))
    comp = compose_time_change(outer, tc)
    flat = np.diff(tc.passage_index) == 0
    dX = np.diff(comp.points[:, 0])
    assert np.all(dX[flat] == 0.0)


def test_compose_coverage_error():
    dx = 0.01
    sub = SubordinatorPath(dx=dx, values=np.linspace(0, 2, 201))
    tc = invert_subordinator(sub, 0.01, 1.0)
    outer = simulate_levy_outer(2.0, 1, 10, dx, _stream(11))
    with pytest.raises(CoverageError):
        compose_time_change(outer, tc)


def test_left_limit_composition_differs_finitely():
    dt = 1.0 / 4096
    sub = simulate_subordinator(0.8, 1.0, dt, _stream(12))
    tc = invert_subordinator(sub, dt, 1.0)
    outer = simulate_levy_outer(1.5, 1, len(sub.values), dt, _stream(13))
    right = compose_time_change(outer, tc)
    left = compose_time_change(outer, tc, left_limit=True)
    differing = int(np.sum(right.points[:, 0] != left.points[:, 0]))
    advances = int(np.sum(np.diff(tc.passage_index) > 0))
    assert differing <= advances
    # graph box counts differ by at most the number of differing points
    from ctrwfractal import box_count, extract_graph

    cr = box_count(extract_graph(right), 2, 10)
    cl = box_count(extract_graph(left), 2, 10)
    assert np.all(np.abs(cr.counts - cl.counts) <= differing)


# --------------------------------------------------------------------------
# discrete CTRW


def test_ctrw_deterministic_waits_counts_floor_t():
    jump = lambda n, s: np.ones(n)
    wait = lambda n, s: np.ones(n)
    path = simulate_ctrw_discrete(jump, wait, 1.0, 10.0, 0.25, _stream(14))
    t = path.t_grid()
    assert np.array_equal(path.points[:, 0], np.floor(t + 1e-12))


def test_ctrw_zero_jumps_constant_path():
    jump = lambda n, s: np.zeros(n)
    wait = lambda n, s: sample_triangular_waiting(0.8, 1.0, n, s)
    path = simulate_ctrw_discrete(jump, wait, 100.0, 1.0, 0.01, _stream(15),
                                  norm_exponent=0.4)
    assert np.all(path.points == 0.0)


def test_ctrw_count_convergence_to_inverse_clock():
    # stable-domain waits: c^-beta N_c matches the exact first-passage law
    from scipy.special import gamma

    beta, c, n = 0.8, 10**4, 10**4
    waits = lambda m, s: sample_one_sided_stable(beta, m, s)
    counts = count_renewals(waits, float(c), n, _stream(16))
    ref = sample_one_sided_stable(beta, 10**5, _stream(17)) ** (-beta)
    stat = ks_statistic(counts * float(c) ** -beta, ref)
    assert stat < ks_critical_value(n, 10**5, 0.05)


def test_ctrw_pareto_ks_decreases():
    from scipy.special import gamma

    beta = 0.8
    ref = (sample_one_sided_stable(beta, 10**5, _stream(18)) ** (-beta)
           / gamma(1 - beta))
    stats = []
    for k, c in enumerate((100.0, 1000.0, 10000.0)):
        waits = lambda m, s: sample_triangular_waiting(beta, 1.0, m, s)
        counts = count_renewals(waits, c, 4000, _stream(19 + k))
        stats.append(ks_statistic(counts * c**-beta, ref))
    assert stats[0] > stats[1] > stats[2]


# --------------------------------------------------------------------------
# correlated jumps


def test_correlated_walk_h_half_iid():
    path = simulate_correlated_jump_walk(0.5, 2**14, _stream(23))
    inc = np.diff(path.points[:, 0])
    inc = inc - inc.mean()
    rho = np.dot(inc[1:], inc[:-1]) / np.dot(inc, inc)
    assert abs(rho) < 0.02


def test_correlated_walk_variance_matches_fbm():
    vals = np.array(
        [simulate_correlated_jump_walk(0.7, 2**16, _stream(24000 + p)).points[-1, 0]
         for p in range(200)]
    )
    assert abs(vals.var() - 1.0) < 0.1  # fBm variance at t = 1


def test_correlated_walk_base_case():
    path = simulate_correlated_jump_walk(0.7, 1, _stream(25))
    assert len(path.points) == 2
    assert path.points[0, 0] == 0.0


def test_correlated_walk_long_memory_sign():
    # H > 1/2 gives positively correlated jumps
    path = simulate_correlated_jump_walk(0.8, 2**14, _stream(26))
    inc = np.diff(path.points[:, 0])
    inc = inc - inc.mean()
    rho = np.dot(inc[1:], inc[:-1]) / np.dot(inc, inc)
    assert rho > 0.05


# --------------------------------------------------------------------------
# self-similarity of the composed process (distributional, KS)


def test_time_change_self_similarity_and_composition():
    beta, alpha = 0.8, 1.5
    n = 10**4
    dx = 1.0 / 512

    def sample_E(t0, base):
        out = np.empty(n)
        for p in range(n):
            sub = simulate_subordinator(beta, t0, dx, _stream(base + p))
            tc = invert_subordinator(sub, t0, t0)
            out[p] = tc.e_values[-1]
        return out

    e1 = sample_E(1.0, 300000)
    e4 = sample_E(4.0, 300000 + n)
    stat = ks_statistic(e4 / 4.0**beta, e1)
    assert stat < ks_critical_value(n, n, 0.01)

    # X(t) = Y(E_t) with Y independent alpha-stable: conditionally on E_t,
    # X(t) is E_t^(1/alpha) times a standard symmetric stable draw
    xi1 = sample_symmetric_stable(alpha, n, _stream(27))
    xi4 = sample_symmetric_stable(alpha, n, _stream(28))
    x1 = e1 ** (1 / alpha) * xi1
    x4 = e4 ** (1 / alpha) * xi4
    stat = ks_statistic(x4 / 4.0 ** (beta / alpha), x1)
    assert stat < ks_critical_value(n, n, 0.01)


def test_model_spec_validation_and_roundtrip():
    spec = ModelSpec.fbm_time_change(0.3, 0.8, d=2)
    assert ModelSpec.from_dict(spec.to_dict()) == spec
    spec = ModelSpec.mixture_time_change([(0.5, 1.0), (0.8, 2.0)], alpha=1.5)
    assert ModelSpec.from_dict(spec.to_dict()) == spec
    with pytest.raises(ValueError):
        ModelSpec("stable", "stable", alpha=1.5, beta=1.2)
    with pytest.raises(ValueError):
        ModelSpec("stable", "mixture", mixture=((0.8, 1.0), (0.5, 1.0)))
    with pytest.raises(ValueError):
        ModelSpec("stable", "stable", "shlesinger", alpha=1.5, beta=0.5)
    with pytest.raises(ValueError):
        ModelSpec("brownian", "stable", beta=0.5, d=0)
