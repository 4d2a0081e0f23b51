"""Exception types shared across the package."""


class DomainError(ValueError):
    """Argument outside the domain where a quantity is defined."""


class ConvergenceError(RuntimeError):
    """A numerical procedure did not reach the requested tolerance."""

    def __init__(self, message, achieved_tol=None):
        super().__init__(message)
        self.achieved_tol = achieved_tol


class MaxTermsExceeded(ConvergenceError):
    """The Matsubara sum hit its configured term limit before converging."""


class StepUnderflowError(ArithmeticError):
    """Finite-difference step too small to resolve the derivative."""
