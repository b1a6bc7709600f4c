"""Exception hierarchy shared by all subdivlab modules."""


class SubdivLabError(Exception):
    """Base class for every error raised by this package."""


class GraphError(SubdivLabError, ValueError):
    """Input does not describe a simple connected graph."""


class SelfLoopError(GraphError):
    pass


class DuplicateEdgeError(GraphError):
    pass


class DisconnectedError(GraphError):
    pass


class IndexOutOfRangeError(GraphError, IndexError):
    pass


class SameNodeError(SubdivLabError, ValueError):
    pass


class SizeLimitError(SubdivLabError):
    pass


class NotSymmetricError(SubdivLabError, ValueError):
    pass


class NoConvergenceError(SubdivLabError, ArithmeticError):
    pass


class DegenerateTransferError(SubdivLabError, ArithmeticError):
    pass


class DegenerateSpectrumError(SubdivLabError, ArithmeticError):
    """A non-leading eigenvalue sits at 1, which a connected graph cannot have."""


class RankMismatchError(SubdivLabError, ArithmeticError):
    pass


class SingularSystemError(SubdivLabError, ArithmeticError):
    pass


class StepBudgetExceededError(SubdivLabError, RuntimeError):
    pass


class MethodUnavailableError(SubdivLabError):
    pass


class EdgeListParseError(SubdivLabError, ValueError):
    def __init__(self, message, line=None, path=None):
        self.line = line
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}: "
        elif where:
            where += " "
        super().__init__(where + message)
