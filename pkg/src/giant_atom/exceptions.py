"""Exception types raised by the solvers and the CLI."""


class ParameterError(ValueError):
    """Invalid physical parameters or sweep specification."""


class DegenerateDressingError(ParameterError):
    """Dressed states are undefined (zero drive and zero drive detuning)."""


class NoConvergenceError(RuntimeError):
    """A root search found no solution in its (widened) bracket."""


class IllConditionedFitError(ValueError):
    """Least-squares fit whose design vector is numerically zero."""


class SingularSystemError(RuntimeError):
    """Matching system is singular; carries the condition number estimate."""

    def __init__(self, message, condition=None):
        super().__init__(message)
        self.condition = condition
