"""Exception types raised by the toolkit."""


class JointsError(Exception):
    """Base class for all toolkit errors."""


class ZeroDirection(JointsError, ValueError):
    pass


class GenericityExhausted(JointsError, RuntimeError):
    """No projection direction passed the genericity checks."""


class EmptyConfig(JointsError, ValueError):
    pass


class HypothesisViolated(JointsError, ValueError):
    """The inputs do not satisfy the hypotheses of a lemma checker."""


class ResourceLimit(JointsError, RuntimeError):
    pass


class UnsupportedRepresentation(JointsError, ValueError):
    pass


class DegreeZero(JointsError, ValueError):
    pass


class TooManySets(JointsError, ValueError):
    pass


class BudgetTooSmall(JointsError, ValueError):
    pass


class LineInZeroSet(JointsError, ValueError):
    pass


class VanishingDerivative(JointsError, ValueError):
    pass


class DegenerateElimination(JointsError, ValueError):
    pass


class ParameterOutOfRange(JointsError, ValueError):
    pass


class InputFormatError(JointsError, ValueError):
    """Malformed input file; carries a location when one is known."""

    def __init__(self, message, line=None, column=None, path=""):
        self.line, self.column, self.path = line, column, path
        where = f"line {line}, column {column}: " if line is not None else ""
        where += f"{path}: " if path else ""
        super().__init__(where + message)
