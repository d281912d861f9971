"""Exception types shared across the package.

Domain violations (bad arguments, non-physical parameter regions) and
numerical-convergence failures are kept distinct so that callers, and the
command line front end in particular, can map them to different exit codes.
"""

from __future__ import annotations


class DomainError(ValueError):
    """An argument lies outside the physically or mathematically valid domain."""


class ConvergenceError(RuntimeError):
    """A numerical routine could not reach the requested accuracy.

    Carries the best available estimate and the error actually achieved so
    that callers can decide whether the partial result is still usable.
    """

    def __init__(self, message, best_estimate=None, achieved_error=None):
        super().__init__(message)
        self.best_estimate = best_estimate
        self.achieved_error = achieved_error


class TruncationError(ConvergenceError):
    """Probability leaked past the Fock-space truncation boundary.

    Raised when the accumulated leakage exceeds the accepted budget; the fix
    is a larger truncation dimension.
    """

    def __init__(self, message, leakage, truncation):
        super().__init__(message, best_estimate=None, achieved_error=leakage)
        self.leakage = leakage
        self.truncation = truncation


class ModelValidityWarning(UserWarning):
    """Parameters strain an assumption of the weak-coupling, high-T model."""
