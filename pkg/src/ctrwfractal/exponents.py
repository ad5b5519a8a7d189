"""Evaluable characteristic / Laplace exponent families.

Every family maps a frequency pair (eta, xi) with eta real and xi in R^d
to a complex value Phi(eta, xi) with Re Phi >= 0 and Phi(0, 0) = 0.  The
eta slot carries the clock (subordinator) frequency, the xi slot the
spatial process; degenerate slots contribute zero.  Complex powers use the
principal branch throughout: for real eta,

    (-i eta)^b = |eta|^b (cos(pi b / 2) - i sign(eta) sin(pi b / 2)).
"""

import numpy as np

__all__ = [
    "StableRadial",
    "MixtureSubordinator",
    "CoupledShlesinger",
    "SumExponent",
    "eval_exponent",
]


def _xi_norm(xi):
    xi = np.asarray(xi, dtype=float)
    if xi.ndim == 0:
        return np.abs(xi)
    return np.sqrt(np.sum(xi * xi, axis=-1))


class StableRadial:
    """Isotropic stable spatial exponent psi(xi) = ||xi||^alpha on R^d."""

    def __init__(self, alpha, d=1):
        if not 0.0 < alpha <= 2.0:
            raise ValueError("alpha must lie in (0, 2]")
        if d < 1:
            raise ValueError("d must be >= 1")
        self.alpha = float(alpha)
        self.d = int(d)

    def value(self, eta, xi):
        out = _xi_norm(xi) ** self.alpha
        return out + 0.0j

    def radial(self, r):
        """psi as a function of ||xi|| (used by shell quadrature)."""
        return np.asarray(r, dtype=float) ** self.alpha + 0.0j


class MixtureSubordinator:
    """Clock exponent of D = sum_k d_k D_k with stable components.

    Fourier form sigma(eta) = sum_k (-i d_k eta)^{beta_k}; the matching
    Laplace exponent is sum_k (d_k s)^{beta_k}.
    """

    def __init__(self, atoms):
        atoms = [(float(b), float(dk)) for b, dk in atoms]
        if not atoms:
            raise ValueError("at least one atom required")
        for b, dk in atoms:
            if not 0.0 < b < 1.0:
                raise ValueError("stability indices must lie in (0, 1)")
            if dk <= 0.0:
                raise ValueError("component weights must be positive")
        self.atoms = atoms
        self.d = 0  # clock only
        self.beta_max = max(b for b, _ in atoms)

    def value(self, eta, xi):
        eta = np.asarray(eta, dtype=float)
        out = np.zeros(np.broadcast(eta, np.empty(())).shape, dtype=complex)
        sgn = np.sign(eta)
        for b, dk in self.atoms:
            mag = np.abs(dk * eta) ** b
            out = out + mag * (np.cos(np.pi * b / 2) - 1j * sgn * np.sin(np.pi * b / 2))
        return out

    def laplace(self, s):
        s = np.asarray(s, dtype=float)
        return sum((dk * s) ** b for b, dk in self.atoms)


class CoupledShlesinger:
    """Joint Fourier-Laplace exponent (eta + ||xi||^2)^beta of the coupled
    Gaussian-jump model; eta is the Laplace (clock) variable, eta >= 0."""

    def __init__(self, beta):
        if not 0.0 < beta < 1.0:
            raise ValueError("beta must lie in (0, 1)")
        self.beta = float(beta)
        self.d = 1

    def value(self, eta, xi):
        base = np.asarray(eta, dtype=complex) + _xi_norm(xi) ** 2
        return base**self.beta


class SumExponent:
    """Independent clock + spatial pair: Phi(eta, xi) = sigma(eta) + psi(xi)."""

    def __init__(self, sigma, psi):
        self.sigma = sigma
        self.psi = psi
        self.d = psi.d

    def value(self, eta, xi):
        return self.sigma.value(eta, 0.0) + self.psi.value(0.0, xi)


def eval_exponent(fam, eta, xi):
    """Evaluate a family at one frequency pair; returns a complex scalar."""
    return complex(np.asarray(fam.value(eta, xi)))
