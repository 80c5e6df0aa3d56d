"""Exception taxonomy shared by all kreinlab modules.

Every failure mode maps onto one of five exception classes so that callers
(and the command line driver) can translate outcomes into exit codes without
string matching.
"""

from __future__ import annotations


class KreinLabError(Exception):
    """Base class for all kreinlab errors."""


class InputError(KreinLabError, ValueError):
    """A caller violated a documented precondition (bad parameter, bad domain,
    malformed config).  Maps to CLI exit code 1."""


class AccuracyError(KreinLabError, ArithmeticError):
    """A numerical routine could not meet its accuracy target within its
    budget.  Carries the best available estimate so diagnostics stay possible.
    Maps to CLI exit code 2."""

    def __init__(self, message: str, best_estimate=None, abs_error=None):
        super().__init__(message)
        self.best_estimate = best_estimate
        self.abs_error = abs_error


class InconclusiveError(KreinLabError, ArithmeticError):
    """A classification routine could not decide between outcomes with the
    required confidence.  Never silently downgraded to a guess.  Maps to CLI
    exit code 2."""

    def __init__(self, message: str, evidence=None):
        super().__init__(message)
        self.evidence = evidence


class UnsupportedError(KreinLabError, NotImplementedError):
    """The requested combination of options is recognized but deliberately
    outside the implemented scope (for example a custom weight without a
    singularity profile)."""


class NumericError(KreinLabError, ArithmeticError):
    """An internal numerical invariant failed (eigensolver breakdown,
    non-monotone ladder where monotonicity is mathematically forced)."""
