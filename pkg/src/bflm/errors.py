"""Exception hierarchy shared across the package.

Every error raised by library code derives from :class:`BflmError`, so
callers can catch one type at an API boundary.  Validation problems are
also ``ValueError`` subclasses; quadrature and other numerical
breakdowns are ``ArithmeticError`` subclasses.
"""


class BflmError(Exception):
    """Base class for all package errors."""


class ConstantResponseError(BflmError, ValueError):
    """The response vector has zero centered sum of squares."""


class RankDeficientError(BflmError, ValueError):
    """The design matrix is numerically rank deficient."""


class DegenerateDirectionError(BflmError, ValueError):
    """A calibration direction carries no signal through the design."""


class InvalidHyperparametersError(BflmError, ValueError):
    """Robust-prior hyperparameters violate their admissibility constraints."""


class NumericalFailureError(BflmError, ArithmeticError):
    """A quadrature or downstream numerical computation did not stabilize."""


class InvalidRegimeError(BflmError, ValueError):
    """An asymptotic regime violates its own invariants."""


class UnsupportedRegimeError(BflmError, ValueError):
    """No asymptotic result is available for this (kind, regime) pair."""


class ExperimentAbortedError(BflmError, RuntimeError):
    """Too many replicate failures for a Monte-Carlo sweep to be trusted."""
