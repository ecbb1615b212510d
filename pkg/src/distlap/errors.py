"""Exception hierarchy shared by every distlap module."""


class DistlapError(ValueError):
    """Base class for all library errors."""


class LoopEdge(DistlapError):
    pass


class DuplicateEdge(DistlapError):
    pass


class VertexOutOfRange(DistlapError):
    pass


class Disconnected(DistlapError):
    pass


class NotATree(DistlapError):
    pass


class DimensionMismatch(DistlapError):
    pass


class TooSmall(DistlapError):
    pass


class NoConvergence(DistlapError, ArithmeticError):
    pass


class BadParams(DistlapError):
    pass


class InvalidDecomposition(DistlapError):
    pass


class NotPendantPath(DistlapError):
    pass


class WrongOrder(DistlapError):
    pass


class AlreadyAdjacent(DistlapError):
    pass


class OutOfRange(DistlapError):
    pass


class EmptyClass(DistlapError):
    pass


class UnknownLemma(DistlapError):
    pass


class ParseError(DistlapError):
    """Malformed edge-list or graph6 input.

    ``position`` is a 1-based line number for edge lists and a 0-based
    byte offset for graph6.
    """

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at {position})"
        super().__init__(message)
        self.position = position
