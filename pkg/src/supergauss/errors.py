"""Exception types shared across the package."""


class SuperGaussError(Exception):
    """Base class for all package errors."""


class ToleranceNotMetError(SuperGaussError):
    """Panel budget exhausted before the error estimate reached the target.

    Carries the best value obtained so far in ``re``, ``im`` and the
    achieved ``err_estimate`` so callers can decide whether to proceed.
    """

    def __init__(self, message, re=None, im=None, err_estimate=None):
        super().__init__(message)
        self.re = re
        self.im = im
        self.err_estimate = err_estimate


class OverflowGuardError(SuperGaussError):
    """The integrand peak exceeds the representable floating-point range."""


class NotAZeroError(SuperGaussError):
    """A point presented as a certified zero fails the residual check."""


class SimplicityIndeterminateError(SuperGaussError):
    """Derivative at a zero is smaller than its own error bound."""


class NewtonStallError(SuperGaussError):
    """Field gradient vanished off the real axis during refinement."""


class SuspiciousBracketError(SuperGaussError):
    """A sign-change bracket resolved into more than one crossing."""


class EmitError(SuperGaussError):
    """Figure or file emission failed (for example an empty dataset)."""
