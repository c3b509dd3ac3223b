"""Exception hierarchy for extremefim.

Every error raised by the library derives from :class:`ExtremeFimError`,
so callers can catch one base class at an API boundary. Subclasses mark
*what kind* of contract was violated, not where it happened.
"""

from __future__ import annotations


class ExtremeFimError(Exception):
    """Base class for all extremefim errors."""


class ParameterError(ExtremeFimError):
    """A scalar argument is outside its admissible range (theta <= 0, bad K or L)."""


class DomainError(ExtremeFimError):
    """A point argument violates a structural constraint (e.g. y_min > y_max)."""


class DataShapeError(ExtremeFimError):
    """Input data has the wrong shape: ragged matrix, empty dataset, missing column."""


class DegenerateDataError(ExtremeFimError):
    """Data is formally valid but makes the likelihood degenerate (all zeros, ties)."""


class UnsupportedModelError(ExtremeFimError):
    """The requested closed form exists only for a specific family."""


class RootSolverError(ExtremeFimError):
    """A bracketing root search failed; the message carries the search diagnostics."""


class QuadratureError(ExtremeFimError):
    """Numeric integration did not reach its tolerance.

    Carries the best available estimate and the reported error bound so the
    caller can decide whether the partial answer is still useful.
    """

    def __init__(self, message: str, estimate: float, error_bound: float):
        super().__init__(message)
        self.estimate = estimate
        self.error_bound = error_bound


class OptimizerError(ExtremeFimError):
    """1-D likelihood maximization failed to converge; message carries the trace."""


class TrialError(ExtremeFimError):
    """A simulation trial failed; carries (K, trial_index) and the original error."""

    def __init__(self, K: int, trial_index: int, original: Exception, partial: str = ""):
        detail = f"; {partial}" if partial else ""
        super().__init__(
            f"trial failed at K={K}, trial_index={trial_index}: {original}{detail}"
        )
        self.K = K
        self.trial_index = trial_index
        self.original = original


class UndefinedBoundError(ExtremeFimError):
    """A Cramer-Rao bound was requested for nonpositive information."""
