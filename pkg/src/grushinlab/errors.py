"""Exception hierarchy shared by all modules."""


class GrushinLabError(Exception):
    """Base class for every error raised by the package."""


class NonConvergence(GrushinLabError):
    """A numerical procedure failed to meet its tolerance within budget.

    ``partial`` carries whatever diagnostic values were produced before
    giving up (partial sums, last estimate, ...).
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class InvalidHint(GrushinLabError):
    pass


class NonpositiveExponent(GrushinLabError):
    pass


class NonpositiveWidth(GrushinLabError):
    pass


class NonpositiveRHS(GrushinLabError):
    """Raised instead of dividing by a right-hand side that is <= 0."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class ArgumentOutOfRange(GrushinLabError):
    pass


class NonpositiveArgument(GrushinLabError):
    pass


class GridTooCoarse(GrushinLabError):
    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class BudgetExhausted(GrushinLabError):
    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class NegativeInput(GrushinLabError):
    pass


class InvalidPoint(GrushinLabError, ValueError):
    pass
