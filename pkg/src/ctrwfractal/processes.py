"""Sample-path simulation for time-changed processes X(t) = Y(E_t).

The inner clock is a strictly increasing subordinator D (single stable
index or a sum of independent stable components); its right-continuous
inverse E_t is computed on a uniform t-grid by first-passage indexing.
Outer processes: symmetric stable Levy motion, Brownian motion (the
``alpha = 2`` case), exact fractional Brownian motion, or the subordinator
itself (identity coupling).  The Shlesinger model couples Gaussian jumps
to the waiting times.  Pre-limit discrete CTRWs are provided for
convergence studies.
"""

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.fft

from .sampling import sample_one_sided_stable, sample_symmetric_stable
from .streams import RandomStream

__all__ = [
    "ModelSpec",
    "SubordinatorPath",
    "TimeChange",
    "GridPath",
    "CoverageError",
    "simulate_subordinator",
    "invert_subordinator",
    "simulate_levy_outer",
    "simulate_fbm_outer",
    "simulate_coupled_shlesinger",
    "compose_time_change",
    "simulate_ctrw_discrete",
    "count_renewals",
    "simulate_correlated_jump_walk",
]


class CoverageError(RuntimeError):
    """A path does not cover the requested horizon or grid."""


# --------------------------------------------------------------------------
# model specification


@dataclass(frozen=True)
class ModelSpec:
    """Declarative description of one time-changed process family.

    outer    : "brownian" | "stable" | "fbm" | "subordinator"
    inner    : "stable" | "mixture" | None   (None means no time change)
    coupling : "uncoupled" | "identity" | "shlesinger"
    mixture  : tuple of (beta_k, d_k) with strictly increasing beta_k
    """

    outer: str
    inner: str | None = "stable"
    coupling: str = "uncoupled"
    alpha: float = 2.0
    beta: float | None = None
    hurst: float | None = None
    d: int = 1
    mixture: tuple = ()
    horizon: float = 1.0

    def __post_init__(self):
        if self.outer not in ("brownian", "stable", "fbm", "subordinator"):
            raise ValueError(f"unknown outer process {self.outer!r}")
        if self.inner not in ("stable", "mixture", None):
            raise ValueError(f"unknown inner process {self.inner!r}")
        if self.coupling not in ("uncoupled", "identity", "shlesinger"):
            raise ValueError(f"unknown coupling {self.coupling!r}")
        if self.d < 1:
            raise ValueError("d must be >= 1")
        if self.horizon <= 0.0:
            raise ValueError("horizon must be positive")
        if self.outer == "brownian" and self.alpha != 2.0:
            raise ValueError("brownian outer requires alpha = 2")
        if self.outer == "stable" and not 0.0 < self.alpha <= 2.0:
            raise ValueError("alpha must lie in (0, 2]")
        if self.outer == "fbm":
            if self.hurst is None or not 0.0 < self.hurst < 1.0:
                raise ValueError("fbm outer requires hurst in (0, 1)")
        if self.inner == "stable" or self.coupling in ("identity", "shlesinger"):
            if self.beta is None or not 0.0 < self.beta < 1.0:
                raise ValueError("beta must lie in (0, 1)")
        if self.inner == "mixture":
            if len(self.mixture) == 0:
                raise ValueError("mixture inner requires atoms")
            betas = [b for b, _ in self.mixture]
            if any(not 0.0 < b < 1.0 for b in betas):
                raise ValueError("mixture indices must lie in (0, 1)")
            if any(b2 <= b1 for b1, b2 in zip(betas, betas[1:])):
                raise ValueError("mixture indices must be strictly increasing")
            if any(dk <= 0.0 for _, dk in self.mixture):
                raise ValueError("mixture weights d_k must be positive")
        if self.coupling == "identity" and self.outer != "subordinator":
            raise ValueError("identity coupling means the outer process is the clock")
        if self.coupling == "shlesinger":
            if self.d != 1:
                raise ValueError("shlesinger coupling is one-dimensional")
            if self.alpha != 2.0 * self.beta:
                raise ValueError("shlesinger coupling forces alpha = 2*beta")

    # convenience constructors for the families verified in the experiments
    @staticmethod
    def brownian_time_change(beta, d=1, horizon=1.0):
        return ModelSpec("brownian", "stable", beta=beta, d=d, horizon=horizon)

    @staticmethod
    def stable_time_change(alpha, beta, d=1, horizon=1.0):
        return ModelSpec("stable", "stable", alpha=alpha, beta=beta, d=d, horizon=horizon)

    @staticmethod
    def fbm_time_change(hurst, beta, d=1, horizon=1.0):
        return ModelSpec("fbm", "stable", hurst=hurst, beta=beta, d=d, horizon=horizon)

    @staticmethod
    def mixture_time_change(atoms, alpha=2.0, d=1, horizon=1.0):
        atoms = tuple((float(b), float(dk)) for b, dk in atoms)
        outer = "brownian" if alpha == 2.0 else "stable"
        return ModelSpec(outer, "mixture", alpha=alpha, d=d, mixture=atoms, horizon=horizon)

    @staticmethod
    def identity_coupling(beta, horizon=1.0):
        return ModelSpec("subordinator", "stable", "identity", beta=beta, horizon=horizon)

    @staticmethod
    def shlesinger_coupling(beta, horizon=1.0):
        return ModelSpec("stable", "stable", "shlesinger",
                         alpha=2.0 * beta, beta=beta, horizon=horizon)

    @staticmethod
    def plain(outer, alpha=2.0, hurst=None, d=1, horizon=1.0):
        """Outer process without a time change (E_t = t)."""
        return ModelSpec(outer, None, alpha=alpha, hurst=hurst, d=d, horizon=horizon)

    def inner_atoms(self):
        """The subordinator components as a list of (beta_k, d_k)."""
        if self.inner == "mixture":
            return list(self.mixture)
        if self.beta is not None:
            return [(self.beta, 1.0)]
        return []

    def to_dict(self):
        out = {
            "outer": self.outer,
            "inner": self.inner,
            "coupling": self.coupling,
            "alpha": self.alpha,
            "d": self.d,
            "horizon": self.horizon,
        }
        if self.beta is not None:
            out["beta"] = self.beta
        if self.hurst is not None:
            out["hurst"] = self.hurst
        if self.mixture:
            out["mixture"] = [list(a) for a in self.mixture]
        return out

    @staticmethod
    def from_dict(data):
        kw = dict(data)
        if "mixture" in kw:
            kw["mixture"] = tuple((float(b), float(dk)) for b, dk in kw["mixture"])
        return ModelSpec(**kw)


# --------------------------------------------------------------------------
# path containers


@dataclass
class SubordinatorPath:
    """Strictly increasing clock samples D(0), D(dx), D(2 dx), ..."""

    dx: float
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)

    @property
    def final(self):
        return float(self.values[-1])

    def x_grid(self):
        return np.arange(len(self.values)) * self.dx


@dataclass
class TimeChange:
    """Inverse clock on a uniform t-grid.

    ``passage_index[i]`` is the first grid index j with D(j dx) >= t_i, and
    ``e_values[i] = passage_index[i] * dx``; with this convention the grid
    identities E_{D(x_j)} = x_j and D(E_t) >= t hold exactly.
    """

    dt: float
    dx: float
    e_values: np.ndarray
    passage_index: np.ndarray

    def t_grid(self):
        return np.arange(len(self.e_values)) * self.dt


@dataclass
class GridPath:
    """Uniform-grid samples of a process with values in R^d."""

    dt: float
    points: np.ndarray  # shape (n, d)
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim == 1:
            pts = pts[:, None]
        if pts.shape[0] < 2:
            raise ValueError("a path needs at least two samples")
        if not np.isfinite(pts).all():
            raise ValueError("path contains non-finite coordinates")
        self.points = pts

    @property
    def d(self):
        return self.points.shape[1]

    def t_grid(self):
        return np.arange(len(self.points)) * self.dt


# --------------------------------------------------------------------------
# subordinator and its inverse

_BLOCK = 1 << 16


def simulate_subordinator(atoms, T, dx, stream: RandomStream, x_min=0.0):
    """Simulate D(x) = sum_k d_k D_k(x) on the grid x_j = j*dx until D > T.

    ``atoms`` is a list of (beta_k, d_k); a single-index subordinator is the
    one-atom case.  Increments of each component over one grid step are
    dx**(1/beta_k) times a standard one-sided stable draw, which matches the
    component law exactly on the grid.  ``x_min`` forces coverage of at
    least [0, x_min] even after D exceeds T.
    """
    if isinstance(atoms, (int, float)):
        atoms = [(float(atoms), 1.0)]
    atoms = [(float(b), float(dk)) for b, dk in atoms]
    if dx <= 0.0:
        raise ValueError("dx must be positive")
    if T <= 0.0:
        raise ValueError("horizon must be positive")
    beta_min = min(b for b, _ in atoms)
    scales = [dk * dx ** (1.0 / b) for b, dk in atoms]
    n0 = max(int(2.0 * T**beta_min / dx) + 1, int(math.ceil(x_min / dx)) + 2, 64)
    chunks = [np.zeros(1)]
    total = 0.0
    steps = 0
    while True:
        inc = np.zeros(n0)
        for (b, _), s in zip(atoms, scales):
            inc += s * sample_one_sided_stable(b, n0, stream)
        block = np.cumsum(inc)
        block += total
        total = block[-1]
        chunks.append(block)
        steps += n0
        if total > T and steps * dx >= x_min:
            break
        n0 = min(2 * n0, 1 << 22)
    values = np.concatenate(chunks)
    stop = int(np.searchsorted(values, T, side="right"))  # first index with D > T
    keep = max(stop + 1, int(math.ceil(x_min / dx)) + 1)
    return SubordinatorPath(dx=dx, values=values[: min(keep, len(values))])


def invert_subordinator(path: SubordinatorPath, dt, T):
    """First-passage inverse E_t = inf{x : D(x) > t} computed on the t-grid.

    Grid realization: passage_index(t) = min{j : D(x_j) >= t}.  Using ">="
    at exact ties is what makes E_0 = 0 and the composition E at time
    D(x_j) = x_j exact on the grid; for every non-tie t it agrees with the
    strict-inequality definition.
    """
    if path.final <= T:
        raise CoverageError(
            f"subordinator path ends at D = {path.final:.6g} <= horizon {T:.6g}"
        )
    n = int(round(T / dt))
    t_grid = np.arange(n + 1) * dt
    j = np.searchsorted(path.values, t_grid, side="left")
    return TimeChange(dt=dt, dx=path.dx, e_values=j * path.dx,
                      passage_index=j.astype(np.int64))


# --------------------------------------------------------------------------
# outer processes


def simulate_levy_outer(alpha, d, n_points, dx, stream: RandomStream):
    """Symmetric alpha-stable Levy motion with independent coordinates.

    Increments over one step are dx**(1/alpha) times standard symmetric
    stable draws, exact in distribution on the grid; alpha = 2 gives
    Brownian motion with variance 2x per coordinate.
    """
    if n_points < 2:
        raise ValueError("n_points must be >= 2")
    scale = dx ** (1.0 / alpha)
    pts = np.empty((n_points, d))
    pts[0] = 0.0
    for c in range(d):
        inc = scale * sample_symmetric_stable(alpha, n_points - 1, stream)
        np.cumsum(inc, out=pts[1:, c])
    return GridPath(dt=dx, points=pts,
                    meta={"process": "stable_levy", "alpha": alpha, "d": d})


def simulate_fbm_outer(hurst, d, n_points, dx, stream: RandomStream):
    """Exact fractional Brownian motion via circulant embedding.

    Per coordinate, a fractional Gaussian noise vector on the unit grid is
    synthesized spectrally and scaled by dx**H (self-similarity), so the
    path has exactly the fBm covariance on the grid; Var B(x) = x**(2H).
    ``n_points`` of the form 2**k + 1 makes the embedding FFT cheapest, but
    any length >= 2 is accepted.  H = 1/2 reduces to Brownian motion.
    """
    if n_points < 2:
        raise ValueError("n_points must be >= 2")
    if not 0.0 < hurst < 1.0:
        raise ValueError("hurst must lie in (0, 1)")
    m = n_points - 1
    pts = np.empty((n_points, d))
    pts[0] = 0.0
    scale = dx**hurst
    for c in range(d):
        fgn = _sample_fgn(hurst, m, stream.generator)
        np.cumsum(scale * fgn, out=pts[1:, c])
    return GridPath(dt=dx, points=pts,
                    meta={"process": "fbm", "hurst": hurst, "d": d})


def _fgn_circulant_eigs(hurst, m2):
    """Eigenvalues of the circulant embedding of the fGn covariance (size m2)."""
    half = m2 // 2
    k = np.arange(half + 1, dtype=float)
    rho = 0.5 * ((k + 1) ** (2 * hurst) + np.abs(k - 1) ** (2 * hurst)) - k ** (2 * hurst)
    c = np.empty(m2)
    c[: half + 1] = rho
    c[half + 1:] = rho[1:m2 - half][::-1]
    return scipy.fft.fft(c).real


def _sample_fgn(hurst, m, rng):
    """m draws of standard fractional Gaussian noise (unit variance, lag
    covariance rho(k) = ((k+1)^2H + (k-1)^2H)/2 - k^2H)."""
    if hurst == 0.5:
        return rng.standard_normal(m)
    m2 = scipy.fft.next_fast_len(2 * m, real=True)
    if m2 % 2:
        m2 += 1
    g = _fgn_circulant_eigs(hurst, m2)
    if g.min() < -1e-8 * g.max():
        # embedding failed; exact dense factorization is feasible for small m
        if m <= 4096:
            return _sample_fgn_cholesky(hurst, m, rng)
        raise RuntimeError(
            f"circulant embedding not nonnegative definite (H={hurst}, m={m})"
        )
    g = np.maximum(g, 0.0)
    half = m2 // 2
    z = np.empty(m2, dtype=complex)
    z[0] = rng.standard_normal()
    z[half] = rng.standard_normal()
    v = rng.standard_normal((half - 1, 2)) * np.sqrt(0.5)
    z[1:half] = v[:, 0] + 1j * v[:, 1]
    z[half + 1:] = np.conj(z[1:half][::-1])
    out = scipy.fft.ifft(np.sqrt(g) * z)
    return np.sqrt(m2) * out.real[:m]


def _sample_fgn_cholesky(hurst, m, rng):
    k = np.arange(m, dtype=float)
    rho = 0.5 * ((k + 1) ** (2 * hurst) + np.abs(k - 1) ** (2 * hurst)) - k ** (2 * hurst)
    cov = rho[np.abs(np.subtract.outer(np.arange(m), np.arange(m)))]
    L = np.linalg.cholesky(cov)
    return L @ rng.standard_normal(m)


def simulate_coupled_shlesinger(beta, T, dx, stream: RandomStream, x_min=0.0):
    """Coupled model: per step dD is one-sided stable and dY | dD ~ N(0, 2 dD).

    Returns the clock and the outer path on the shared x-grid.  The joint
    Fourier-Laplace transform E[exp(i xi Y(x) - eta D(x))] equals
    exp(-x (eta + xi^2)^beta) exactly on the grid for any dx.
    """
    sub = simulate_subordinator([(beta, 1.0)], T, dx, stream, x_min=x_min)
    dD = np.diff(sub.values)
    g = stream.generator.standard_normal(len(dD))
    pts = np.empty(len(sub.values))
    pts[0] = 0.0
    np.cumsum(g * np.sqrt(2.0 * dD), out=pts[1:])
    outer = GridPath(dt=dx, points=pts,
                     meta={"process": "shlesinger", "beta": beta, "alpha": 2 * beta})
    return sub, outer


# --------------------------------------------------------------------------
# composition and pre-limit walks


def compose_time_change(outer: GridPath, tc: TimeChange, left_limit=False):
    """Evaluate X(t_i) = Y(E_{t_i}) by passage-index lookup.

    With ``left_limit`` the index is decremented at grid points where E has
    just advanced, realizing Y(E_t-); the two versions differ at most at
    the advance points.
    """
    idx = tc.passage_index
    if idx.max() >= len(outer.points):
        raise CoverageError(
            f"outer path has {len(outer.points)} samples; time change needs "
            f"index {int(idx.max())}"
        )
    if left_limit:
        jumped = np.empty(len(idx), dtype=bool)
        jumped[0] = False
        np.greater(idx[1:], idx[:-1], out=jumped[1:])
        idx = np.where(jumped, idx - 1, idx)
    meta = dict(outer.meta)
    meta.update({"time_changed": True, "left_limit": bool(left_limit)})
    return GridPath(dt=tc.dt, points=outer.points[idx], meta=meta)


def simulate_ctrw_discrete(jump_sampler, waiting_sampler, c, T, dt,
                           stream: RandomStream, norm_exponent=0.0):
    """Pre-limit uncoupled CTRW: position S(N_{c t}) * c**(-norm_exponent).

    ``jump_sampler`` and ``waiting_sampler`` are callables (n, stream) ->
    vector; waits must be positive.  For waits in the domain of a
    beta-stable subordinator and alpha-stable jumps the correct
    normalization exponent is beta/alpha.  Zero events by the horizon
    yields a constant path.
    """
    if c < 1:
        raise ValueError("scale c must be >= 1")
    n = int(round(T / dt))
    t_scaled = np.arange(n + 1) * (dt * c)
    horizon = t_scaled[-1]
    waits = []
    total = 0.0
    block = _BLOCK
    while total <= horizon:
        w = np.asarray(waiting_sampler(block, stream), dtype=float)
        if np.any(w <= 0.0):
            raise ValueError("waiting times must be positive")
        waits.append(w)
        total += float(w.sum())
    arrivals = np.cumsum(np.concatenate(waits))
    counts = np.searchsorted(arrivals, t_scaled, side="right")  # N_{ct}
    n_events = int(counts[-1])
    jumps = np.asarray(jump_sampler(n_events, stream), dtype=float)
    s = np.concatenate([[0.0], np.cumsum(jumps)])
    pts = s[counts] * c ** (-norm_exponent)
    return GridPath(dt=dt, points=pts,
                    meta={"process": "ctrw", "c": c, "norm_exponent": norm_exponent})


def count_renewals(waiting_sampler, horizon, n_rep, stream: RandomStream):
    """N_horizon for n_rep independent renewal sequences (vectorized)."""
    counts = np.zeros(n_rep, dtype=np.int64)
    totals = np.zeros(n_rep)
    active = np.arange(n_rep)
    block = 64
    while active.size:
        w = np.asarray(waiting_sampler(active.size * block, stream), dtype=float)
        w = w.reshape(active.size, block)
        csum = np.cumsum(w, axis=1) + totals[active, None]
        counts[active] += (csum <= horizon).sum(axis=1)
        totals[active] = csum[:, -1]
        active = active[csum[:, -1] <= horizon]
        block = min(2 * block, 4096)
    return counts


def simulate_correlated_jump_walk(hurst, n, stream: RandomStream):
    """Random walk with long-memory Gaussian jumps whose normalized sums
    approach fractional Brownian motion.

    Jumps are a fractionally integrated moving average: J_k = sum_j psi_j
    eps_{k-j} with psi_0 = 1 and psi_j ~ j**(H - 3/2)/Gamma(H - 1/2)
    (psi_j = psi_{j-1} (j - 1 + H - 1/2)/j), truncated at memory length n.
    H = 1/2 degenerates to iid Gaussian jumps.  The path is the partial
    sums normalized so the value at t = 1 has unit variance exactly.
    """
    if not 0.0 < hurst < 1.0:
        raise ValueError("hurst must lie in (0, 1)")
    n = int(n)
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = stream.generator
    dmem = hurst - 0.5
    if dmem == 0.0:
        jumps = rng.standard_normal(n)
    else:
        j = np.arange(1, n + 1, dtype=float)
        psi = np.concatenate([[1.0], np.cumprod((j[:-1] - 1.0 + dmem) / j[:-1])]) if n > 1 else np.array([1.0])
        eps = rng.standard_normal(2 * n - 1)  # warm-up noise for stationarity
        jumps = _fft_ma(eps, psi, n)
    s = np.concatenate([[0.0], np.cumsum(jumps)])
    # exact Var(S_n): each eps_i enters S_n with the summed psi window
    if dmem == 0.0:
        var_sn = float(n)
    else:
        cum = np.concatenate([[0.0], np.cumsum(psi)])
        w_recent = cum[1:]            # eps_n, ..., eps_1 seen by 1..n jumps
        w_old = cum[-1] - cum[:-1]    # warm-up eps_0, ..., eps_{-(n-2)}
        var_sn = float(np.sum(w_recent**2) + np.sum(w_old[1:] ** 2))
    pts = s / np.sqrt(var_sn)
    return GridPath(dt=1.0 / n, points=pts,
                    meta={"process": "correlated_walk", "hurst": hurst,
                          "normalization": np.sqrt(var_sn)})


def _fft_ma(eps, psi, n):
    """Last n values of the moving average of eps with kernel psi."""
    m = len(eps) + len(psi) - 1
    full = scipy.fft.irfft(scipy.fft.rfft(eps, m) * scipy.fft.rfft(psi, m), m)
    # J_k = full[k + n - 2] for k = 1..n (kernel fully inside the noise)
    return full[n - 1: 2 * n - 1]
