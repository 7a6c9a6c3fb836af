"""Exception types raised by :mod:`foq`."""


class ConvergenceError(ArithmeticError):
    """A refinement loop ran out of budget before meeting its tolerance.

    The last two estimates and the level reached are kept for diagnostics.
    """

    def __init__(self, message, *, levels=None, last_change=None, estimate=None):
        super().__init__(message)
        self.levels = levels
        self.last_change = last_change
        self.estimate = estimate


class SingularSystemError(ArithmeticError):
    """The optimality system could not be solved to working precision."""


class SampleError(ValueError):
    """Sampled function data is malformed (non-finite, wrong length, non-uniform)."""
