"""Maximum-likelihood estimators of theta for the exponential family.

Closed forms exist for the raw-sample variants and for minima:

* opt:     grand mean of the N x K sample matrix,
* partial: mean of L retained samples per interval,
* min:     K times the mean of the per-interval minima (the minima are
  exponential with mean theta/K, so the bare mean estimates theta/K and
  the factor K restores consistency; the bare mean is kept on the result
  as a diagnostic).

Maxima and (min, max) pairs have no closed form; their log likelihoods

* max: sum over intervals of (K-1) log(1 - e^{-y/theta}) - y/theta,
  minus N log theta (plus constants),
* mix: sum of (K-2) log(e^{-a/theta} - e^{-b/theta}) - (a+b)/theta,
  minus 2N log theta (plus constants),

are maximized numerically with a bounded derivative-free 1-D optimizer.
The likelihoods are evaluated in the log domain; the difference of
exponentials is computed as e^{-a/theta} * (-expm1(-(b-a)/theta)), which
stays accurate when y_min approaches y_max.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .exceptions import (
    DataShapeError,
    DegenerateDataError,
    DomainError,
    OptimizerError,
    ParameterError,
)
from .extremes import ExtremeDataset

_REL_XTOL = 1e-10
_MAX_ITER = 500
_EXPANSIONS = 3


@dataclass(frozen=True)
class OptimizerDiagnostics:
    """Trace of a 1-D likelihood maximization."""

    iterations: int
    bracket: tuple[float, float]
    converged: bool
    loglik_at_opt: float


@dataclass(frozen=True)
class Estimate:
    """A point estimate of theta.

    ``optimizer`` is present exactly for the numerically maximized
    variants (max, mix). ``raw_mean_min`` is the uncorrected mean of the
    minima, carried as a diagnostic by the min variant.
    """

    variant: str
    theta_hat: float
    optimizer: OptimizerDiagnostics | None = None
    raw_mean_min: float | None = None


def _as_sample_matrix(samples) -> np.ndarray:
    try:
        mat = np.asarray(samples, dtype=float)
    except (ValueError, TypeError) as exc:
        raise DataShapeError(f"samples must form a rectangular numeric matrix: {exc}") from None
    if mat.ndim != 2 or mat.size == 0:
        raise DataShapeError("samples must be a nonempty 2-D matrix")
    if np.any(mat < 0.0):
        raise DomainError("samples must be nonnegative")
    return mat


def estimate_opt(samples) -> Estimate:
    """MLE from all raw samples: the grand mean."""
    mat = _as_sample_matrix(samples)
    if not np.any(mat > 0.0):
        raise DegenerateDataError("all samples are zero; theta_hat = 0 lies outside the parameter space")
    return Estimate(variant="opt", theta_hat=float(mat.mean()))


def estimate_partial(samples, L: int) -> Estimate:
    """MLE from the first L samples of each interval (entries are iid, so
    which L are kept is immaterial); L = K reproduces estimate_opt."""
    mat = _as_sample_matrix(samples)
    L = int(L)
    if not 1 <= L <= mat.shape[1]:
        raise ParameterError(f"L must lie in [1, K={mat.shape[1]}], got {L}")
    kept = mat[:, :L]
    if not np.any(kept > 0.0):
        raise DegenerateDataError("all retained samples are zero")
    return Estimate(variant="partial", theta_hat=float(kept.mean()))


def estimate_min(dataset: ExtremeDataset) -> Estimate:
    """MLE from per-interval minima: K times the mean minimum.

    The minima of K exponentials with mean theta are exponential with mean
    theta/K, so their mean estimates theta/K; multiplying by K gives the
    consistent estimator. The bare mean is exposed as ``raw_mean_min``.
    """
    if np.any(dataset.y_min < 0.0):
        raise DomainError("minima must be nonnegative")
    raw = float(dataset.y_min.mean())
    if raw <= 0.0:
        raise DegenerateDataError("all minima are zero; theta_hat = 0 lies outside the parameter space")
    return Estimate(variant="min", theta_hat=dataset.K * raw, raw_mean_min=raw)


def _maximize_loglik(loglik, lo: float, hi: float, scale: float, variant: str):
    """Bounded derivative-free maximization with geometric bracket expansion.

    Runs a golden-section / parabolic-interpolation hybrid on [lo, hi] to
    an x-tolerance of 1e-10 relative to the data scale, capped at 500
    iterations. A maximum sitting at a bracket endpoint means the bracket
    missed the mode; both ends are widened by a factor of 10, up to three
    times, before giving up.
    """
    xatol = _REL_XTOL * max(scale, np.finfo(float).tiny)
    trace = []
    total_evals = 0
    for _ in range(_EXPANSIONS + 1):
        res = minimize_scalar(
            lambda t: -loglik(t),
            bounds=(lo, hi),
            method="bounded",
            options={"xatol": xatol, "maxiter": _MAX_ITER},
        )
        total_evals += int(res.nfev)
        trace.append((lo, hi, float(res.x), bool(res.success)))
        at_edge = (res.x - lo) < 50.0 * xatol or (hi - res.x) < 50.0 * xatol
        if res.success and not at_edge:
            diag = OptimizerDiagnostics(
                iterations=total_evals,
                bracket=(float(lo), float(hi)),
                converged=True,
                loglik_at_opt=float(-res.fun),
            )
            return float(res.x), diag
        lo, hi = lo / 10.0, hi * 10.0
    raise OptimizerError(
        f"{variant} likelihood maximization did not settle inside any bracket; "
        f"trace (lo, hi, x, success): {trace}"
    )


def estimate_max(dataset: ExtremeDataset) -> Estimate:
    """MLE from per-interval maxima, by numeric likelihood maximization.

    The initial bracket [mean(y_max) / (10 ln K), 10 mean(y_max)] comes
    from the characteristic largest value mu_K = theta ln K: the mean
    maximum over ln K is a consistent pilot estimate of theta.
    """
    y = dataset.y_max
    K, N = dataset.K, dataset.N
    if np.any(y <= 0.0):
        raise DegenerateDataError("maxima must be strictly positive for the max likelihood")
    m = float(y.mean())
    log_k = math.log(K) if K >= 2 else 1.0
    lo, hi = m / (10.0 * log_k), 10.0 * m
    const = N * math.log(K)

    def loglik(theta: float) -> float:
        z = y / theta
        if K == 1:
            return const - float(np.sum(z)) - N * math.log(theta)
        return (
            const
            + float(np.sum((K - 1) * np.log1p(-np.exp(-z)) - z))
            - N * math.log(theta)
        )

    theta_hat, diag = _maximize_loglik(loglik, lo, hi, scale=m, variant="max")
    return Estimate(variant="max", theta_hat=theta_hat, optimizer=diag)


def estimate_mix(dataset: ExtremeDataset) -> Estimate:
    """MLE from per-interval (min, max) pairs, by numeric maximization.

    Requires K >= 2. For K >= 3 every pair must satisfy y_min < y_max
    strictly, otherwise the (K-2) factor of the joint density is zero and
    the likelihood degenerates; for K = 2 that factor is absent and ties
    are tolerated.
    """
    K, N = dataset.K, dataset.N
    if K < 2:
        raise ParameterError("the (min, max) pair likelihood requires K >= 2")
    a, b = dataset.y_min, dataset.y_max
    if K >= 3 and np.any(a == b):
        tied = int(np.argmax(a == b))
        raise DegenerateDataError(
            f"interval {tied} has y_min = y_max = {a[tied]!r}; "
            f"the pair likelihood is degenerate there for K >= 3"
        )
    m = float(b.mean())
    if m <= 0.0:
        raise DegenerateDataError("all maxima are zero; the likelihood has no interior maximum")
    gap = b - a
    log_k = math.log(K)
    lo, hi = m / (10.0 * log_k), 10.0 * m
    const = N * math.log(K * (K - 1.0))

    def loglik(theta: float) -> float:
        core = -(a + b) / theta
        if K > 2:
            # log(e^{-a/t} - e^{-b/t}) = -a/t + log(-expm1(-(b-a)/t))
            core = core + (K - 2) * (-a / theta + np.log(-np.expm1(-gap / theta)))
        return const + float(np.sum(core)) - 2.0 * N * math.log(theta)

    theta_hat, diag = _maximize_loglik(loglik, lo, hi, scale=m, variant="mix")
    return Estimate(variant="mix", theta_hat=theta_hat, optimizer=diag)
