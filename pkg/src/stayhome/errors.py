"""Exception hierarchy shared by every module in the package."""


class StayHomeError(Exception):
    """Base class for all errors raised by :mod:`stayhome`."""


class InvalidSize(StayHomeError, ValueError):
    pass


class InvalidParameters(StayHomeError, ValueError):
    pass


class UnsupportedConstruction(StayHomeError, ValueError):
    pass


class ValidationFailure(StayHomeError, ValueError):
    """An orthogonal array or design failed validation.

    ``violation`` carries the structured :class:`~stayhome.graphs.Violation`.
    """

    def __init__(self, violation):
        super().__init__(str(violation))
        self.violation = violation


class InfeasibleParameters(StayHomeError, ValueError):
    pass


class PreconditionViolation(StayHomeError, ValueError):
    pass


class InvariantViolation(StayHomeError, ArithmeticError):
    """A numerical certificate came out on the wrong side of its tolerance.

    This almost always means a decomposition bug, not a property of the graph.
    """

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class NumericalFailure(StayHomeError, ArithmeticError):
    pass


class ParseError(StayHomeError, ValueError):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position
