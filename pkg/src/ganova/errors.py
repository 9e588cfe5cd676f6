"""Exception hierarchy shared by every module."""


class GanovaError(Exception):
    """Base class for all errors raised by the package."""


class DomainError(GanovaError, ValueError):
    """An argument lies outside the domain of a function."""


class DataError(GanovaError, ValueError):
    """Input data could not be parsed or violates a data invariant."""


class DesignError(DataError):
    """The group layout cannot support the requested computation."""


class DegenerateDataError(DataError):
    """The data are valid but make a statistic undefined (e.g. SSE = 0)."""


class NumericError(GanovaError, ArithmeticError):
    """An iterative numerical routine failed to converge."""
