"""Extreme-value structure of K iid draws.

An interval of K iid observations is reduced to its minimum and maximum.
This module provides the sampling densities of those extremes, the
characteristic smallest/largest values at which the plug-in information
approximations are evaluated, and the reduction of raw sample matrices to
per-interval extremes.

Densities for the extremes of K iid draws from (f, F):

* minimum:  K [1 - F(y)]^(K-1) f(y)
* maximum:  K F(y)^(K-1) f(y)
* joint (min, max), K >= 2 and a <= b:
  K (K-1) [F(b) - F(a)]^(K-2) f(a) f(b)

The characteristic smallest value mu_1 and largest value mu_K solve
F(mu_1) = 1/K and F(mu_K) = 1 - 1/K: out of K draws, one observation is
expected at or below mu_1 and one at or above mu_K.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .distributions import DistributionModel, _check_theta, _scalar_like
from .exceptions import (
    DataShapeError,
    DomainError,
    ParameterError,
    RootSolverError,
)

_VALID_KINDS = ("min", "max", "joint")


@dataclass(frozen=True)
class ExtremeDataset:
    """N intervals of (y_min, y_max) extremes with common group size K.

    ``y_min`` and ``y_max`` are parallel 1-D arrays; row i holds the
    extremes of interval i, in the original interval order. Ties
    y_min = y_max are legal (continuous data stored at finite precision
    can collide); for K = 1 min and max necessarily coincide and the
    constructor enforces it.
    """

    K: int
    y_min: np.ndarray = field(repr=False)
    y_max: np.ndarray = field(repr=False)

    def __post_init__(self):
        K = int(self.K)
        if K < 1:
            raise ParameterError(f"group size K must be >= 1, got {K}")
        y_min = np.atleast_1d(np.asarray(self.y_min, dtype=float))
        y_max = np.atleast_1d(np.asarray(self.y_max, dtype=float))
        if y_min.ndim != 1 or y_max.ndim != 1 or y_min.size != y_max.size:
            raise DataShapeError("y_min and y_max must be 1-D arrays of equal length")
        if y_min.size == 0:
            raise DataShapeError("dataset must contain at least one interval")
        if np.any(y_min > y_max):
            bad = int(np.argmax(y_min > y_max))
            raise DomainError(
                f"interval {bad} has y_min={y_min[bad]!r} > y_max={y_max[bad]!r}"
            )
        if K == 1 and np.any(y_min != y_max):
            raise DomainError("with K = 1 the minimum and maximum must coincide")
        object.__setattr__(self, "K", K)
        object.__setattr__(self, "y_min", y_min)
        object.__setattr__(self, "y_max", y_max)

    @property
    def N(self) -> int:
        return int(self.y_min.size)

    @property
    def intervals(self) -> list[tuple[float, float]]:
        return [(float(a), float(b)) for a, b in zip(self.y_min, self.y_max)]

    @classmethod
    def from_pairs(cls, K: int, pairs) -> "ExtremeDataset":
        pairs = list(pairs)
        if not pairs:
            raise DataShapeError("dataset must contain at least one interval")
        y_min = np.array([p[0] for p in pairs], dtype=float)
        y_max = np.array([p[1] for p in pairs], dtype=float)
        return cls(K=K, y_min=y_min, y_max=y_max)


@dataclass(frozen=True)
class CharacteristicValues:
    """Characteristic smallest (mu1) and largest (muK) values for (theta, K)."""

    mu1: float
    muK: float
    K: int
    theta: float


def extreme_pdf(model: DistributionModel, kind: str, point, theta: float, K: int):
    """Density of the minimum, maximum, or joint (min, max) of K iid draws.

    For ``kind`` in {"min", "max"} the point may be a scalar or array and
    K >= 1 is allowed (K = 1 reduces to the base density). For "joint" the
    point is a pair (y_min, y_max) with y_min <= y_max and K >= 2; a tied
    pair has probability zero and the density is reported as 0 for K >= 3,
    while for K = 2 the formula's literal value 2 f(a) f(b) is returned.
    """
    theta = _check_theta(theta)
    if kind not in _VALID_KINDS:
        raise ParameterError(f"kind must be one of {_VALID_KINDS}, got {kind!r}")
    K = int(K)
    if K < 1:
        raise ParameterError(f"group size K must be >= 1, got {K}")

    if kind == "joint":
        if K < 2:
            raise ParameterError("joint extreme density requires K >= 2")
        try:
            a, b = point
        except (TypeError, ValueError):
            raise DomainError("joint density takes a (y_min, y_max) pair") from None
        a, b = float(a), float(b)
        if a > b:
            raise DomainError(f"joint density requires y_min <= y_max, got ({a}, {b})")
        if a == b and K >= 3:
            return 0.0
        spread = model.cdf(b, theta) - model.cdf(a, theta)
        return float(
            K * (K - 1) * spread ** (K - 2) * model.pdf(a, theta) * model.pdf(b, theta)
        )

    y = np.asarray(point, dtype=float)
    F = np.asarray(model.cdf(y, theta), dtype=float)
    f = np.asarray(model.pdf(y, theta), dtype=float)
    if kind == "min":
        out = K * (1.0 - F) ** (K - 1) * f
    else:
        out = K * F ** (K - 1) * f
    return _scalar_like(point, out)


def _solve_cdf_root(model: DistributionModel, theta: float, target: float) -> float:
    """Solve F(x; theta) = target by bracketed bisection plus a secant polish.

    The CDF is monotone on the support, so bisection is unconditionally
    safe; it runs until the CDF value at the midpoint is within 1e-12 of
    the target, after which one secant step through the last two midpoints
    collapses the remaining error to near machine precision.
    """
    lo, hi = model.support(theta)
    a = float(lo)
    if math.isinf(hi):
        b = max(abs(theta), 1.0)
        doublings = 0
        while model.cdf(b, theta) < target:
            b *= 2.0
            doublings += 1
            if doublings > 1024:
                raise RootSolverError(
                    f"could not bracket F = {target} on {model.name}: "
                    f"reached x = {b:.3e} with F = {model.cdf(b, theta)!r}"
                )
    else:
        b = float(hi)

    ga = model.cdf(a, theta) - target
    gb = model.cdf(b, theta) - target
    if ga > 0.0 or gb < 0.0:
        raise RootSolverError(
            f"F = {target} not bracketed on [{a}, {b}] for {model.name}: "
            f"endpoint values ({ga + target}, {gb + target})"
        )

    mid, gm = a, ga
    prev_mid, prev_gm = b, gb
    for _ in range(200):
        prev_mid, prev_gm = mid, gm
        mid = 0.5 * (a + b)
        gm = model.cdf(mid, theta) - target
        if abs(gm) <= 1e-12:
            break
        if gm < 0.0:
            a = mid
        else:
            b = mid

    x = mid
    if gm != prev_gm:
        secant = mid - gm * (mid - prev_mid) / (gm - prev_gm)
        if a <= secant <= b:
            x = secant
    return float(x)


def characteristic_values(
    model: DistributionModel,
    theta: float,
    K: int,
    solver: str = "auto",
) -> CharacteristicValues:
    """Characteristic smallest and largest values mu_1 and mu_K.

    ``solver`` selects how the defining equations F(mu_1) = 1/K and
    F(mu_K) = 1 - 1/K are solved: "closed_form" uses the family's closed
    form, "root" forces the generic bracketing solver, and "auto" (the
    default) prefers the closed form when the family provides one.
    """
    theta = _check_theta(theta)
    K = int(K)
    if K < 2:
        raise ParameterError(f"characteristic values require K >= 2, got {K}")
    if solver not in ("auto", "closed_form", "root"):
        raise ParameterError(f"unknown solver {solver!r}")

    closed = model.characteristic_closed_form(theta, K) if solver != "root" else None
    if solver == "closed_form" and closed is None:
        raise ParameterError(f"{model.name} provides no closed-form characteristic values")

    if closed is not None:
        mu1, muK = closed
    else:
        mu1 = _solve_cdf_root(model, theta, 1.0 / K)
        muK = _solve_cdf_root(model, theta, 1.0 - 1.0 / K)
    return CharacteristicValues(mu1=float(mu1), muK=float(muK), K=K, theta=theta)


def reduce_intervals(samples) -> ExtremeDataset:
    """Reduce an N x K sample matrix to per-interval extremes.

    Keeps only each row's minimum and maximum, in row order. This is the
    compression step: everything else about the raw samples is discarded.
    """
    try:
        mat = np.asarray(samples, dtype=float)
    except (ValueError, TypeError) as exc:
        raise DataShapeError(f"samples must form a rectangular numeric matrix: {exc}") from None
    if mat.ndim != 2:
        raise DataShapeError(f"samples must be a 2-D matrix, got ndim={mat.ndim}")
    n, k = mat.shape
    if n < 1:
        raise DataShapeError("samples must contain at least one interval row")
    if k < 2:
        raise DataShapeError(f"each interval needs K >= 2 samples, got K={k}")
    return ExtremeDataset(K=k, y_min=mat.min(axis=1), y_max=mat.max(axis=1))


def extreme_tail_bounds(
    model: DistributionModel,
    kind: str,
    theta: float,
    K: int,
    tail_mass: float = 1e-14,
) -> tuple[float, float]:
    """Interval containing all but ``tail_mass`` of the extreme law on each side.

    Used to truncate integration domains. The bounds are the extreme law's
    quantiles at tail_mass and 1 - tail_mass, computed through the base
    quantile and inverse-survival functions so that no intermediate
    probability collapses to 1.0 in floating point:

    * min law: F_min = 1 - (1 - F)^K, so the lower bound is
      Q(-expm1(log1p(-p)/K)) and the upper bound isf(q^(1/K)).
    * max law: F_max = F^K, so the lower bound is Q(p^(1/K)) and the upper
      bound isf(-expm1(log1p(-q)/K)).
    """
    theta = _check_theta(theta)
    K = int(K)
    if K < 1:
        raise ParameterError(f"group size K must be >= 1, got {K}")
    if kind not in ("min", "max"):
        raise ParameterError(f"tail bounds are defined for kind 'min' or 'max', got {kind!r}")
    p = float(tail_mass)
    if not 0.0 < p < 0.5:
        raise ParameterError(f"tail_mass must lie in (0, 0.5), got {p}")

    if kind == "min":
        lo = model.quantile(-math.expm1(math.log1p(-p) / K), theta)
        hi = model.isf(math.exp(math.log(p) / K), theta)
    else:
        lo = model.quantile(math.exp(math.log(p) / K), theta)
        hi = model.isf(-math.expm1(math.log1p(-p) / K), theta)
    return (float(lo), float(hi))
