"""Random variate generators for heavy-tailed waiting times and stable jumps.

Scale conventions, fixed once for the whole package:

* one-sided stable ``S`` with index ``beta`` in (0,1):
  ``E[exp(-s S)] = exp(-s**beta)`` for s >= 0;
* symmetric stable ``xi`` with index ``alpha`` in (0,2]:
  ``E[exp(i u xi)] = exp(-|u|**alpha)`` (``alpha = 2`` is Normal with
  variance 2).

All samplers are exact (no truncation or series approximation) and draw a
fixed number of uniforms/exponentials per variate, so output is a pure
function of the stream state.
"""

import numpy as np

from .streams import RandomStream

__all__ = [
    "sample_one_sided_stable",
    "sample_symmetric_stable",
    "sample_triangular_waiting",
    "sample_mixture_index",
]

_TINY = 1e-300  # floor for exp(1) draws; an exact 0.0 would produce inf/nan


def sample_one_sided_stable(beta, n, stream: RandomStream):
    """Draw ``n`` iid one-sided stable variates via the Kanter representation.

    With V uniform on (0, pi] and W standard exponential,

        S = sin(beta V) * sin((1-beta) V)^((1-beta)/beta)
            / ( sin(V)^(1/beta) * W^((1-beta)/beta) )

    has Laplace transform exp(-s**beta). Strictly positive output.
    """
    beta = float(beta)
    if not 0.0 < beta < 1.0:
        raise ValueError(f"beta must lie in (0, 1), got {beta}")
    n = _checked_count(n)
    if n == 0:
        return np.empty(0)
    rng = stream.generator
    v = np.pi * (1.0 - rng.random(n))  # uniform on (0, pi]
    w = rng.standard_exponential(n)
    np.maximum(w, _TINY, out=w)
    r = (1.0 - beta) / beta
    return (
        np.sin(beta * v)
        * np.sin((1.0 - beta) * v) ** r
        / (np.sin(v) ** (1.0 / beta) * w**r)
    )


def sample_symmetric_stable(alpha, n, stream: RandomStream):
    """Draw ``n`` iid symmetric stable variates (Chambers-Mallows-Stuck).

    Characteristic function exp(-|u|**alpha).  The ``alpha = 2`` branch
    samples Gaussians directly (variance 2); the CMS formula degenerates
    numerically there.
    """
    alpha = float(alpha)
    if not 0.0 < alpha <= 2.0:
        raise ValueError(f"alpha must lie in (0, 2], got {alpha}")
    n = _checked_count(n)
    if n == 0:
        return np.empty(0)
    rng = stream.generator
    if alpha == 2.0:
        return rng.normal(0.0, np.sqrt(2.0), n)
    phi = np.pi * (rng.random(n) - 0.5)
    if alpha == 1.0:
        return np.tan(phi)
    w = rng.standard_exponential(n)
    np.maximum(w, _TINY, out=w)
    return (
        np.sin(alpha * phi)
        / np.cos(phi) ** (1.0 / alpha)
        * (np.cos((1.0 - alpha) * phi) / w) ** ((1.0 - alpha) / alpha)
    )


def sample_triangular_waiting(beta, c, n, stream: RandomStream):
    """Draw conditional power-law waiting times for the triangular-array model.

    The law is P{W > u} = u^(-beta) / c for u >= c^(-1/beta); sampling is by
    CDF inversion, so every output is >= c^(-1/beta).
    """
    beta = float(beta)
    c = float(c)
    if not 0.0 < beta < 1.0:
        raise ValueError(f"beta must lie in (0, 1), got {beta}")
    if c <= 0.0:
        raise ValueError(f"scale c must be positive, got {c}")
    n = _checked_count(n)
    if n == 0:
        return np.empty(0)
    u = 1.0 - stream.generator.random(n)  # uniform on (0, 1]
    return (c * u) ** (-1.0 / beta)


def sample_mixture_index(weights, stream: RandomStream, n=None):
    """Draw stability indices from a discrete mixture {(beta_k, p_k)}.

    ``weights`` is a sequence of (beta_k, p_k) with p_k > 0 summing to 1.
    Returns a scalar when ``n`` is None, else a vector of ``n`` draws.
    """
    atoms = np.asarray([b for b, _ in weights], dtype=float)
    probs = np.asarray([p for _, p in weights], dtype=float)
    if atoms.size == 0:
        raise ValueError("mixture needs at least one atom")
    if np.any(probs <= 0.0):
        raise ValueError("mixture probabilities must be positive")
    if abs(probs.sum() - 1.0) > 1e-9:
        raise ValueError(f"mixture probabilities must sum to 1, got {probs.sum()}")
    if np.any(atoms <= 0.0) or np.any(atoms >= 1.0):
        raise ValueError("mixture indices must lie in (0, 1)")
    scalar = n is None
    count = 1 if scalar else _checked_count(n)
    idx = stream.generator.choice(atoms.size, size=count, p=probs)
    out = atoms[idx]
    return float(out[0]) if scalar else out


def _checked_count(n):
    n = int(n)
    if n < 0:
        raise ValueError(f"count must be nonnegative, got {n}")
    return n
