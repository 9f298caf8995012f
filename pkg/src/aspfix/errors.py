"""Exception hierarchy shared by every module."""


class AspFixError(Exception):
    """Base class for all errors raised by the package."""


class ParseError(AspFixError):
    def __init__(self, message, span=None, filename="<string>"):
        self.message = message
        self.span = span
        self.filename = filename
        super().__init__(str(self))

    def __str__(self):
        if self.span is None:
            return f"{self.filename}: {self.message}"
        return f"{self.filename}:{self.span.line}:{self.span.column}: {self.message}"


class SafetyError(AspFixError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


class GroundingError(AspFixError):
    pass


class SolverError(AspFixError):
    pass


class BudgetExceeded(SolverError):
    """The time budget ran out before the search reached a verdict."""


class CeilingExceeded(SolverError):
    """The brute-force backend refuses programs above its atom ceiling."""


class NoConsistentSubset(AspFixError):
    """Not even the empty subset of the target set is consistent."""


class NoCorrection(AspFixError):
    pass


class NoAdditionCandidates(NoCorrection):
    pass


class SelectorCollision(AspFixError):
    pass


class NotMaximal(AspFixError):
    pass
