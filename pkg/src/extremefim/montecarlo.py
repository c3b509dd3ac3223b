"""Seeded, reproducible simulation studies.

A study draws N x K sample matrices, compresses each to per-interval
extremes, estimates theta with every requested variant, and aggregates
the empirical variances per (K, variant) with Cramer-Rao overlays.

Reproducibility contract: the stream for trial t at group size K is
seeded by a fixed 64-bit mix of (base_seed, K, t). Results therefore do
not depend on execution order or interleaving; trials are independent
work items and may run concurrently, with aggregation a deterministic
reduction over the trial index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .distributions import DistributionModel, Exponential
from .estimators import (
    Estimate,
    estimate_max,
    estimate_min,
    estimate_mix,
    estimate_opt,
    estimate_partial,
)
from .exceptions import (
    ExtremeFimError,
    ParameterError,
    TrialError,
)
from .extremes import reduce_intervals
from . import fim as _fim

_MASK64 = (1 << 64) - 1
_VALID_VARIANTS = ("opt", "partial", "min", "max", "mix")
_OVERLAY_SOURCES = ("closed_form", "plug_in", "quadrature")


def _splitmix64(z: int) -> int:
    """One splitmix64 scrambling round; full 64-bit avalanche."""
    z = (z + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derive_trial_seed(base_seed: int, K: int, trial_index: int) -> int:
    """Deterministic per-trial seed: a fixed integer mix of the three inputs."""
    s = _splitmix64(int(base_seed) & _MASK64)
    s = _splitmix64(s ^ (int(K) & _MASK64))
    s = _splitmix64(s ^ (int(trial_index) & _MASK64))
    return s


@dataclass(frozen=True)
class StudyConfig:
    """Configuration of a simulation study.

    ``variants`` may include "partial", in which case ``L`` must be set
    and be valid for every K in ``K_list``. ``overlays`` selects which
    Cramer-Rao bound sources are attached to the report.
    """

    theta: float
    N: int
    K_list: tuple[int, ...]
    trials: int
    base_seed: int
    model: DistributionModel = field(default_factory=Exponential)
    variants: tuple[str, ...] = ("opt", "min", "max", "mix")
    L: int | None = None
    overlays: tuple[str, ...] = _OVERLAY_SOURCES

    def __post_init__(self):
        if self.theta <= 0.0:
            raise ParameterError(f"theta must be positive, got {self.theta}")
        if int(self.N) < 1:
            raise ParameterError(f"N must be >= 1, got {self.N}")
        if int(self.trials) < 1:
            raise ParameterError(f"trials must be >= 1, got {self.trials}")
        object.__setattr__(self, "K_list", tuple(int(k) for k in self.K_list))
        object.__setattr__(self, "variants", tuple(self.variants))
        object.__setattr__(self, "overlays", tuple(self.overlays))
        if not self.K_list:
            raise ParameterError("K_list must not be empty")
        for k in self.K_list:
            if k < 2:
                raise ParameterError(f"every K must be >= 2, got {k}")
        if not self.variants:
            raise ParameterError("variants must not be empty")
        for v in self.variants:
            if v not in _VALID_VARIANTS:
                raise ParameterError(f"unknown variant {v!r}; valid: {_VALID_VARIANTS}")
        for s in self.overlays:
            if s not in _OVERLAY_SOURCES:
                raise ParameterError(f"unknown overlay source {s!r}; valid: {_OVERLAY_SOURCES}")
        if "partial" in self.variants:
            if self.L is None:
                raise ParameterError("variant 'partial' requires L")
            if not 1 <= int(self.L) <= min(self.K_list):
                raise ParameterError(
                    f"L={self.L} must lie in [1, min(K_list)={min(self.K_list)}]"
                )


@dataclass(frozen=True)
class VariantStats:
    """Aggregate of one (K, variant) cell over all trials."""

    mean_theta_hat: float
    var_theta_hat: float
    inv_var_normalized: float
    mean_bias: float


@dataclass(frozen=True)
class StudyReport:
    """Study output: per-(K, variant) empirical statistics plus CRLB overlays.

    ``cells`` maps (K, variant) to :class:`VariantStats`; ``overlays``
    maps (K, variant) to {source: crlb} for every source that is defined
    for that variant. Values are variances throughout, so empirical cells
    and overlays are directly comparable.
    """

    theta: float
    N: int
    trials: int
    base_seed: int
    K_list: tuple[int, ...]
    variants: tuple[str, ...]
    cells: dict[tuple[int, str], VariantStats]
    overlays: dict[tuple[int, str], dict[str, float]]

    _SOURCE_LABELS = {
        "closed_form": "crlb_closed",
        "plug_in": "crlb_plugin",
        "quadrature": "crlb_quadrature",
    }

    def to_rows(self) -> list[tuple[int, str, str, float]]:
        """Tidy (K, variant, source, value) rows; values are variances."""
        rows = []
        for K in self.K_list:
            for variant in self.variants:
                stats = self.cells[(K, variant)]
                rows.append((K, variant, "empirical", stats.var_theta_hat))
                for source in _OVERLAY_SOURCES:
                    bound = self.overlays.get((K, variant), {}).get(source)
                    if bound is not None:
                        rows.append((K, variant, self._SOURCE_LABELS[source], bound))
        return rows


def _estimate_variant(variant: str, samples: np.ndarray, dataset, L: int | None) -> Estimate:
    if variant == "opt":
        return estimate_opt(samples)
    if variant == "partial":
        return estimate_partial(samples, L)
    if variant == "min":
        return estimate_min(dataset)
    if variant == "max":
        return estimate_max(dataset)
    return estimate_mix(dataset)


def run_trial(config: StudyConfig, K: int, trial_index: int) -> dict[str, Estimate]:
    """One synthetic trial: sample, reduce to extremes, estimate all variants.

    The sample matrix is N x K, drawn from config.model with the seed
    derived from (base_seed, K, trial_index); identical inputs give
    bit-identical estimates. The returned mapping holds exactly the
    requested variants, in configuration order. Estimator failures are
    re-raised as :class:`TrialError` carrying (K, trial_index).

    The estimators themselves are the exponential-family likelihoods;
    running them against data from another model measures that model's
    data under a misspecified fit.
    """
    K = int(K)
    seed = derive_trial_seed(config.base_seed, K, trial_index)
    samples = config.model.sample(config.theta, config.N * K, seed).reshape(config.N, K)
    dataset = reduce_intervals(samples)
    out: dict[str, Estimate] = {}
    for variant in config.variants:
        try:
            out[variant] = _estimate_variant(variant, samples, dataset, config.L)
        except ExtremeFimError as exc:
            raise TrialError(K, trial_index, exc) from exc
    return out


def _crlb_overlays(config: StudyConfig, K: int) -> dict[str, dict[str, float]]:
    """CRLBs per variant and source, keeping only the defined combinations."""
    model, theta, N = config.model, config.theta, config.N
    candidates: dict[str, dict[str, object]] = {}
    for variant in config.variants:
        cell: dict[str, object] = {}
        if variant in ("opt", "partial"):
            args = (model, theta, N, K) if variant == "opt" else (model, theta, N, K, config.L)
            fn = _fim.fim_opt if variant == "opt" else _fim.fim_partial
            cell["closed_form"] = lambda fn=fn, args=args: fn(*args)
        else:
            if variant == "min":
                cell["closed_form"] = lambda: _fim.fim_min_exact(model, theta, N, K)
            cell["plug_in"] = lambda v=variant: _fim.fim_plugin(model, v, theta, N, K)
            cell["quadrature"] = lambda v=variant: _fim.fim_quadrature(model, v, theta, N, K)
        candidates[variant] = cell

    overlays: dict[str, dict[str, float]] = {}
    for variant, cell in candidates.items():
        resolved: dict[str, float] = {}
        for source in config.overlays:
            maker = cell.get(source)
            if maker is None:
                continue
            try:
                resolved[source] = _fim.crlb(maker())
            except ExtremeFimError:
                continue
        overlays[variant] = resolved
    return overlays


def run_study(config: StudyConfig) -> StudyReport:
    """Run the whole study: all K values, all trials, aggregate, overlay.

    Aggregation uses the unbiased sample variance over trials and reports
    mean bias alongside. Any trial failure aborts the study; the raised
    :class:`TrialError` states how many cells had already completed.
    """
    cells: dict[tuple[int, str], VariantStats] = {}
    overlays: dict[tuple[int, str], dict[str, float]] = {}
    theta, n_trials = config.theta, int(config.trials)

    for K in config.K_list:
        estimates = {v: np.empty(n_trials) for v in config.variants}
        for t in range(n_trials):
            try:
                record = run_trial(config, K, t)
            except TrialError as exc:
                raise TrialError(
                    exc.K,
                    exc.trial_index,
                    exc.original,
                    partial=f"{len(cells)} (K, variant) cells completed before the failure",
                ) from exc.original
            for v, est in record.items():
                estimates[v][t] = est.theta_hat
        for v in config.variants:
            values = estimates[v]
            mean = float(values.mean())
            var = float(values.var(ddof=1)) if n_trials > 1 else 0.0
            inv_norm = (theta**2 / (config.N * var)) if var > 0.0 else math.inf
            cells[(K, v)] = VariantStats(
                mean_theta_hat=mean,
                var_theta_hat=var,
                inv_var_normalized=inv_norm,
                mean_bias=mean - theta,
            )
        for v, resolved in _crlb_overlays(config, K).items():
            overlays[(K, v)] = resolved

    return StudyReport(
        theta=theta,
        N=config.N,
        trials=n_trials,
        base_seed=config.base_seed,
        K_list=config.K_list,
        variants=config.variants,
        cells=cells,
        overlays=overlays,
    )


@dataclass(frozen=True)
class ProbeRow:
    """One row of a convergence probe: extreme spread at group size K."""

    K: int
    var_ymax: float
    mean_ratio: float


def convergence_probe(
    model: DistributionModel,
    K_list,
    replicates: int,
    seed: int,
    theta: float = 1.0,
) -> list[ProbeRow]:
    """Empirical concentration of Y_max as K grows.

    Maxima are drawn directly through the max law's inverse CDF,
    Q(u^(1/K)), so the cost is one draw per replicate regardless of K.
    ``var_ymax`` is the sample variance of the maxima. ``mean_ratio`` is
    mean(Y_max) over an independent estimate of E[Y_max]: the replicates
    are split in half, the first half estimates the expectation, and the
    second half's mean is divided by it. Concentration of Y_max around
    its expectation drives this ratio to 1 as K grows.
    """
    replicates = int(replicates)
    if replicates < 1000:
        raise ParameterError(f"replicates must be >= 1000, got {replicates}")
    rng = np.random.default_rng(seed)
    rows = []
    for K in K_list:
        K = int(K)
        if K < 1:
            raise ParameterError(f"every K must be >= 1, got {K}")
        u = rng.random(replicates)
        v = np.exp(np.log(u) / K)
        y = np.asarray(model.quantile(v, theta), dtype=float)
        half = replicates // 2
        expectation = float(y[:half].mean())
        ratio = float(y[half:].mean()) / expectation
        rows.append(ProbeRow(K=K, var_ymax=float(y.var(ddof=1)), mean_ratio=ratio))
    return rows
