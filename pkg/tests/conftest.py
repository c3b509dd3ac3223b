"""Auxiliary distribution families used across the test modules."""

import numpy as np

from extremefim import Exponential, ThetaDerivatives
from extremefim.distributions import DistributionModel


class CenteredUniform(DistributionModel):
    """Uniform of width theta centered at a fixed point c.

    Support [c - theta/2, c + theta/2]: the parameter stretches the
    interval symmetrically, so the lower and upper extremes respond to
    theta at the same rate. This is the family on which the max-vs-min
    information balance is exactly zero.
    """

    name = "centered_uniform"
    mda_shape_ok = True

    def __init__(self, center: float = 0.7):
        self.center = float(center)

    def support(self, theta):
        return (self.center - theta / 2.0, self.center + theta / 2.0)

    def pdf(self, x, theta):
        xa = np.asarray(x, dtype=float)
        lo, hi = self.support(theta)
        out = np.where((xa >= lo) & (xa <= hi), 1.0 / theta, 0.0)
        return float(out) if np.ndim(x) == 0 else out

    def cdf(self, x, theta):
        xa = np.asarray(x, dtype=float)
        lo, _ = self.support(theta)
        out = np.clip((xa - lo) / theta, 0.0, 1.0)
        return float(out) if np.ndim(x) == 0 else out

    def quantile(self, u, theta):
        ua = np.asarray(u, dtype=float)
        lo, _ = self.support(theta)
        out = lo + ua * theta
        return float(out) if np.ndim(u) == 0 else out

    def theta_derivatives(self, x, theta):
        self._require_interior(x, theta)
        xa = np.asarray(x, dtype=float)
        z = xa - self.center
        scalar = np.ndim(x) == 0

        def shape(v):
            return float(v) if scalar else np.broadcast_to(v, xa.shape).astype(float)

        return ThetaDerivatives(
            dF_dtheta=shape(-z / theta**2),
            d2F_dtheta2=shape(2.0 * z / theta**3),
            df_dtheta=shape(np.full_like(xa, -1.0 / theta**2)),
            d2f_dtheta2=shape(np.full_like(xa, 2.0 / theta**3)),
        )


class NumericExponential(Exponential):
    """Exponential family with its analytic derivatives hidden.

    Forces the base-class finite-difference fallback so the fallback can
    be compared against the analytic values of the parent.
    """

    name = "numeric_exponential"
    theta_derivatives = DistributionModel.theta_derivatives


class ZeroSampler(Exponential):
    """Pathological sampler returning all zeros, for failure-path tests."""

    name = "zero_sampler"

    def sample(self, theta, n, seed):
        return np.zeros(int(n), dtype=float)


def naive_loglik_max(y, K):
    """Vectorized exponential max log likelihood, written independently
    of the library: takes an array of theta values, returns one log
    likelihood per theta (additive constants dropped)."""
    y = np.asarray(y, dtype=float)

    def evaluate(thetas):
        t = np.asarray(thetas, dtype=float)[None, :]
        z = y[:, None] / t
        terms = (K - 1) * np.log1p(-np.exp(-z)) - z
        return terms.sum(axis=0) - y.size * np.log(t[0])

    return evaluate


def naive_loglik_mix(a, b, K):
    """Vectorized exponential (min, max) pair log likelihood over thetas."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)

    def evaluate(thetas):
        t = np.asarray(thetas, dtype=float)[None, :]
        ea = np.exp(-a[:, None] / t)
        eb = np.exp(-b[:, None] / t)
        terms = (K - 2) * np.log(ea - eb) - (a + b)[:, None] / t
        return terms.sum(axis=0) - 2.0 * a.size * np.log(t[0])

    return evaluate


def grid_maximize(evaluate, lo, hi, n_coarse=20_000, n_fine=200_000, chunk=50_000):
    """Two-stage dense grid search for the maximizer of a vectorized
    function on [lo, hi]: a coarse pass over the whole bracket, then a
    fine pass of n_fine points over a window of two coarse steps around
    the coarse winner."""

    def argmax_on(grid):
        best_x, best_v = grid[0], -np.inf
        for i in range(0, grid.size, chunk):
            seg = grid[i:i + chunk]
            vals = evaluate(seg)
            j = int(np.argmax(vals))
            if vals[j] > best_v:
                best_v = float(vals[j])
                best_x = float(seg[j])
        return best_x

    coarse = np.linspace(lo, hi, n_coarse)
    x1 = argmax_on(coarse)
    step = (hi - lo) / (n_coarse - 1)
    fine = np.linspace(max(lo, x1 - 2.0 * step), min(hi, x1 + 2.0 * step), n_fine)
    return argmax_on(fine)
