"""Information bounds and maximum-likelihood estimation from per-interval extremes.

When each measurement interval of K iid draws is compressed to its
minimum and maximum, how much can still be learned about the underlying
scale parameter? This package answers that quantitatively: exact and
approximate Fisher information for estimators built on minima, maxima,
or the pair, the matching Cramer-Rao bounds, the estimators themselves,
and a reproducible simulation harness for checking the bounds against
empirical variances.
"""

from .distributions import DistributionModel, Exponential, ThetaDerivatives, Uniform
from .estimators import (
    Estimate,
    OptimizerDiagnostics,
    estimate_max,
    estimate_min,
    estimate_mix,
    estimate_opt,
    estimate_partial,
)
from .exceptions import (
    DataShapeError,
    DegenerateDataError,
    DomainError,
    ExtremeFimError,
    OptimizerError,
    ParameterError,
    QuadratureError,
    RootSolverError,
    TrialError,
    UndefinedBoundError,
    UnsupportedModelError,
)
from .extremes import (
    CharacteristicValues,
    ExtremeDataset,
    characteristic_values,
    extreme_pdf,
    extreme_tail_bounds,
    reduce_intervals,
)
from .fim import (
    LOW_ACCURACY_K,
    AStatistic,
    FimValue,
    a_statistic,
    crlb,
    fim_min_exact,
    fim_opt,
    fim_partial,
    fim_plugin,
    fim_quadrature,
    l_equivalent,
)
from .montecarlo import (
    ProbeRow,
    StudyConfig,
    StudyReport,
    VariantStats,
    convergence_probe,
    derive_trial_seed,
    run_study,
    run_trial,
)

__version__ = "0.1.0"

__all__ = [
    "AStatistic",
    "CharacteristicValues",
    "DataShapeError",
    "DegenerateDataError",
    "DistributionModel",
    "DomainError",
    "Estimate",
    "Exponential",
    "ExtremeDataset",
    "ExtremeFimError",
    "FimValue",
    "LOW_ACCURACY_K",
    "OptimizerDiagnostics",
    "OptimizerError",
    "ParameterError",
    "ProbeRow",
    "QuadratureError",
    "RootSolverError",
    "StudyConfig",
    "StudyReport",
    "ThetaDerivatives",
    "TrialError",
    "UndefinedBoundError",
    "Uniform",
    "UnsupportedModelError",
    "VariantStats",
    "a_statistic",
    "characteristic_values",
    "convergence_probe",
    "crlb",
    "derive_trial_seed",
    "estimate_max",
    "estimate_min",
    "estimate_mix",
    "estimate_opt",
    "estimate_partial",
    "extreme_pdf",
    "extreme_tail_bounds",
    "fim_min_exact",
    "fim_opt",
    "fim_partial",
    "fim_plugin",
    "fim_quadrature",
    "l_equivalent",
    "reduce_intervals",
    "run_study",
    "run_trial",
]
