"""Exception hierarchy shared by every module of the package."""


class CremonaError(Exception):
    """Base class for all errors raised by this package."""


class DegreeMismatch(CremonaError, ValueError):
    pass


class NotDivisible(CremonaError, ArithmeticError):
    pass


class UnaccountedBasePoint(CremonaError):
    """The Noether equations cannot be met by the rational base points found.

    Usually means the linear system has base points that are not defined
    over the rationals.
    """


class IrrationalSingularLocus(CremonaError):
    pass


class InvalidConfiguration(CremonaError, ValueError):
    """Points or maps that violate the preconditions of a construction."""


class WordSyntaxError(CremonaError, ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class DegreeCapExceeded(CremonaError):
    pass


class InternalCheckError(CremonaError):
    """A mechanical check that a proven statement guarantees has failed.

    ``state`` carries a JSON-serializable snapshot of the offending data.
    """

    def __init__(self, message, state=None):
        super().__init__(message)
        self.state = state or {}
