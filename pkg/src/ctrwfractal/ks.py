"""Two-sample Kolmogorov-Smirnov statistic and asymptotic critical values.

Used for the distributional self-similarity checks (D, E and X scaling)
and for the discrete-CTRW convergence study.
"""

import numpy as np

__all__ = ["ks_statistic", "ks_critical_value"]


def ks_statistic(x, y):
    """Max distance between the empirical CDFs of two samples."""
    x = np.sort(np.asarray(x, dtype=float))
    y = np.sort(np.asarray(y, dtype=float))
    n, m = len(x), len(y)
    if n == 0 or m == 0:
        raise ValueError("samples must be non-empty")
    grid = np.concatenate([x, y])
    cx = np.searchsorted(x, grid, side="right") / n
    cy = np.searchsorted(y, grid, side="right") / m
    return float(np.abs(cx - cy).max())


def ks_critical_value(n, m, alpha=0.01):
    """Asymptotic two-sample rejection threshold at level alpha."""
    c = np.sqrt(-np.log(alpha / 2.0) / 2.0)
    return float(c * np.sqrt((n + m) / (n * m)))
