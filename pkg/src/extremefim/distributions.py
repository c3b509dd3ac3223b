"""Scalar-parameter distribution families.

The estimation problem throughout this package is: observe functions of
iid draws from a family ``f_X(x; theta)`` with a single positive scalar
parameter, and recover ``theta``. This module defines the family
abstraction plus the two concrete families used everywhere else:

* :class:`Exponential` with **mean** parameterization,
  ``f(x; theta) = (1/theta) exp(-x/theta)`` on ``x >= 0``. The rate is
  ``1/theta``; keeping the mean as the parameter avoids a whole class of
  inverse-parameter bugs in the information formulas.
* :class:`Uniform` on ``[0, theta]``, a finite-support exemplar whose
  extreme-value behavior is qualitatively different (non-regular model).

All operations take ``theta`` per call; model objects are stateless and
safe to share between threads.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError, ParameterError

_EPS = float(np.finfo(float).eps)
#: Central-difference step factors balancing truncation against rounding,
#: one per derivative order.
_FD_STEP_1 = _EPS ** (1.0 / 3.0)
_FD_STEP_2 = _EPS ** 0.25


@dataclass(frozen=True)
class ThetaDerivatives:
    """First and second partial derivatives of the CDF and density in theta.

    Fields hold d/dtheta and d^2/dtheta^2 of F(x; theta) and f(x; theta)
    at fixed x. ``approximate`` is True when the values came from the
    finite-difference fallback rather than analytic formulas.
    """

    dF_dtheta: float | np.ndarray
    d2F_dtheta2: float | np.ndarray
    df_dtheta: float | np.ndarray
    d2f_dtheta2: float | np.ndarray
    approximate: bool = False


def _check_theta(theta: float) -> float:
    theta = float(theta)
    if not math.isfinite(theta) or theta <= 0.0:
        raise ParameterError(f"theta must be a positive finite real, got {theta!r}")
    return theta


def _scalar_like(template, value):
    """Return a python float when the input point was scalar."""
    if np.ndim(template) == 0:
        return float(value)
    return np.asarray(value, dtype=float)


class DistributionModel(ABC):
    """A scalar-parameter family: density, CDF, quantiles, theta-derivatives, sampling.

    Subclasses must provide :meth:`pdf`, :meth:`cdf`, :meth:`quantile` and
    :meth:`support`. Analytic theta-derivatives should be overridden where
    available; the base class falls back to central finite differences and
    tags the result as approximate.
    """

    #: Identifier used in CLI flags and reports.
    name: str = "abstract"
    #: True when the family's max domain of attraction has GEV shape < 1/2,
    #: the precondition for the large-K concentration arguments.
    mda_shape_ok: bool = True

    @abstractmethod
    def support(self, theta: float) -> tuple[float, float]:
        """Support interval (lower, upper); either end may be infinite."""

    @abstractmethod
    def pdf(self, x, theta: float):
        """Density at x; zero outside the support."""

    @abstractmethod
    def cdf(self, x, theta: float):
        """P{X <= x}, clamped to [0, 1]."""

    @abstractmethod
    def quantile(self, u, theta: float):
        """Inverse CDF at probability u in [0, 1]."""

    def isf(self, q, theta: float):
        """Inverse survival function: the x with P{X > x} = q.

        The default routes through :meth:`quantile`; families with an
        unbounded right tail should override it so that tiny q keeps full
        relative precision (1 - q rounds to 1 for q below machine epsilon).
        """
        q = np.asarray(q, dtype=float)
        return self.quantile(1.0 - q, theta)

    def characteristic_closed_form(self, theta: float, K: int) -> tuple[float, float] | None:
        """Closed-form (mu_1, mu_K) when the family has one, else None."""
        return None

    def sample(self, theta: float, n: int, seed: int) -> np.ndarray:
        """Draw n iid values by inverse-CDF transform of a seeded uniform stream.

        Identical (seed, theta, n) give identical output on every platform:
        the generator is a fixed PCG64 stream and no rejection step is
        involved. n = 0 returns an empty vector.
        """
        theta = _check_theta(theta)
        n = int(n)
        if n < 0:
            raise ParameterError(f"sample size must be nonnegative, got {n}")
        if n == 0:
            return np.empty(0, dtype=float)
        rng = np.random.default_rng(seed)
        u = rng.random(n)
        return np.asarray(self.quantile(u, theta), dtype=float)

    def theta_derivatives(self, x, theta: float) -> ThetaDerivatives:
        """Central finite-difference fallback for families without analytic forms.

        First derivatives use step ``cbrt(eps) * max(1, |theta|)``; second
        derivatives use the analogous fourth-root step, each balancing
        truncation against rounding for its difference order. Results are
        tagged ``approximate=True``.
        """
        theta = _check_theta(theta)
        self._require_interior(x, theta)
        h1 = _FD_STEP_1 * max(1.0, abs(theta))
        h2 = _FD_STEP_2 * max(1.0, abs(theta))
        h1 = min(h1, 0.5 * theta)
        h2 = min(h2, 0.5 * theta)
        xa = np.asarray(x, dtype=float)

        def d1(fun, h):
            return (fun(xa, theta + h) - fun(xa, theta - h)) / (2.0 * h)

        def d2(fun, h):
            return (fun(xa, theta + h) - 2.0 * fun(xa, theta) + fun(xa, theta - h)) / (h * h)

        return ThetaDerivatives(
            dF_dtheta=_scalar_like(x, d1(self.cdf, h1)),
            d2F_dtheta2=_scalar_like(x, d2(self.cdf, h2)),
            df_dtheta=_scalar_like(x, d1(self.pdf, h1)),
            d2f_dtheta2=_scalar_like(x, d2(self.pdf, h2)),
            approximate=True,
        )

    def _require_interior(self, x, theta: float) -> None:
        lo, hi = self.support(theta)
        xa = np.asarray(x, dtype=float)
        if np.any(xa <= lo) or np.any(xa >= hi):
            raise DomainError(
                f"x must lie in the open support ({lo}, {hi}) of {self.name}"
            )

    def __repr__(self) -> str:  # pragma: no cover
        return f"{type(self).__name__}()"


class Exponential(DistributionModel):
    """Exponential family with mean parameter theta (rate 1/theta).

    Density ``f(x; theta) = (1/theta) e^{-x/theta}`` on x >= 0, CDF
    ``F(x; theta) = 1 - e^{-x/theta}``. Its maximum domain of attraction is
    Gumbel (GEV shape 0), and the minimum of K draws is again exponential
    with mean theta/K, which several downstream closed forms rely on.
    """

    name = "exponential"
    mda_shape_ok = True

    def support(self, theta: float) -> tuple[float, float]:
        _check_theta(theta)
        return (0.0, math.inf)

    def pdf(self, x, theta: float):
        theta = _check_theta(theta)
        xa = np.asarray(x, dtype=float)
        out = np.where(xa >= 0.0, np.exp(-np.clip(xa, 0.0, None) / theta) / theta, 0.0)
        return _scalar_like(x, out)

    def cdf(self, x, theta: float):
        theta = _check_theta(theta)
        xa = np.asarray(x, dtype=float)
        out = np.where(xa >= 0.0, -np.expm1(-np.clip(xa, 0.0, None) / theta), 0.0)
        return _scalar_like(x, out)

    def quantile(self, u, theta: float):
        theta = _check_theta(theta)
        ua = np.asarray(u, dtype=float)
        if np.any(ua < 0.0) or np.any(ua > 1.0):
            raise DomainError("quantile probability must lie in [0, 1]")
        with np.errstate(divide="ignore"):
            out = -theta * np.log1p(-ua)
        return _scalar_like(u, out)

    def isf(self, q, theta: float):
        theta = _check_theta(theta)
        qa = np.asarray(q, dtype=float)
        if np.any(qa < 0.0) or np.any(qa > 1.0):
            raise DomainError("survival probability must lie in [0, 1]")
        with np.errstate(divide="ignore"):
            out = -theta * np.log(qa)
        return _scalar_like(q, out)

    def characteristic_closed_form(self, theta: float, K: int) -> tuple[float, float]:
        theta = _check_theta(theta)
        return (theta * math.log(K / (K - 1.0)), theta * math.log(K))

    def theta_derivatives(self, x, theta: float) -> ThetaDerivatives:
        """Analytic theta-partials of F and f.

        With E = e^{-x/theta}:

        * dF/dtheta   = -(x/theta^2) E
        * d2F/dtheta2 = E (2x/theta^3 - x^2/theta^4)
        * df/dtheta   = E (x - theta) / theta^3
        * d2f/dtheta2 = E (x^2 - 4 x theta + 2 theta^2) / theta^5
        """
        theta = _check_theta(theta)
        self._require_interior(x, theta)
        xa = np.asarray(x, dtype=float)
        e = np.exp(-xa / theta)
        dF = -(xa / theta**2) * e
        d2F = e * (2.0 * xa / theta**3 - xa**2 / theta**4)
        df = e * (xa - theta) / theta**3
        d2f = e * (xa**2 - 4.0 * xa * theta + 2.0 * theta**2) / theta**5
        return ThetaDerivatives(
            dF_dtheta=_scalar_like(x, dF),
            d2F_dtheta2=_scalar_like(x, d2F),
            df_dtheta=_scalar_like(x, df),
            d2f_dtheta2=_scalar_like(x, d2f),
        )


class Uniform(DistributionModel):
    """Uniform family on [0, theta].

    Density 1/theta on the interval, CDF x/theta. The right endpoint moves
    with the parameter, which makes the model non-regular: the usual
    second-derivative identity for Fisher information does not hold, and
    information-style quantities computed from it can come out negative.
    Downstream code flags those results instead of hiding them.
    """

    name = "uniform"
    # Reversed-Weibull domain of attraction, GEV shape -1 < 1/2.
    mda_shape_ok = True

    def support(self, theta: float) -> tuple[float, float]:
        theta = _check_theta(theta)
        return (0.0, theta)

    def pdf(self, x, theta: float):
        theta = _check_theta(theta)
        xa = np.asarray(x, dtype=float)
        out = np.where((xa >= 0.0) & (xa <= theta), 1.0 / theta, 0.0)
        return _scalar_like(x, out)

    def cdf(self, x, theta: float):
        theta = _check_theta(theta)
        xa = np.asarray(x, dtype=float)
        return _scalar_like(x, np.clip(xa / theta, 0.0, 1.0))

    def quantile(self, u, theta: float):
        theta = _check_theta(theta)
        ua = np.asarray(u, dtype=float)
        if np.any(ua < 0.0) or np.any(ua > 1.0):
            raise DomainError("quantile probability must lie in [0, 1]")
        return _scalar_like(u, ua * theta)

    def isf(self, q, theta: float):
        theta = _check_theta(theta)
        qa = np.asarray(q, dtype=float)
        return _scalar_like(q, (1.0 - qa) * theta)

    def characteristic_closed_form(self, theta: float, K: int) -> tuple[float, float]:
        theta = _check_theta(theta)
        return (theta / K, theta * (1.0 - 1.0 / K))

    def theta_derivatives(self, x, theta: float) -> ThetaDerivatives:
        theta = _check_theta(theta)
        self._require_interior(x, theta)
        xa = np.asarray(x, dtype=float)
        return ThetaDerivatives(
            dF_dtheta=_scalar_like(x, -xa / theta**2),
            d2F_dtheta2=_scalar_like(x, 2.0 * xa / theta**3),
            df_dtheta=_scalar_like(x, np.full_like(xa, -1.0 / theta**2)),
            d2f_dtheta2=_scalar_like(x, np.full_like(xa, 2.0 / theta**3)),
        )
