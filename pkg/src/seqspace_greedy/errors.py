"""Exception hierarchy shared by every module."""


class SeqSpaceError(Exception):
    """Base class for all errors raised by seqspace_greedy."""


class DomainError(SeqSpaceError, ValueError):
    """Argument outside the domain of a function (e.g. negative t)."""


class DegenerateFlowError(SeqSpaceError, ValueError):
    """Flow requested at a scale where the base function vanishes."""


class BracketError(SeqSpaceError, RuntimeError):
    """A root-finding bracket does not contain a sign change."""


class ConvergenceError(SeqSpaceError, RuntimeError):
    """Bisection hit its iteration cap before reaching tolerance."""


class DescriptorError(SeqSpaceError, ValueError):
    """Malformed descriptor, or data requested beyond what it defines."""


class ShapeError(SeqSpaceError, ValueError):
    """Input sequence does not have the required shape (e.g. not monotone)."""


class WeightShapeError(ShapeError):
    """Weight unsuitable for the requested norm."""


class ArityError(SeqSpaceError, ValueError):
    """Requested more terms than the vector has."""


class BudgetError(SeqSpaceError, ValueError):
    """Combinatorial search would exceed the configured budget."""


class HypothesisError(SeqSpaceError, ValueError):
    """A precondition of an estimator is violated by the input space."""
