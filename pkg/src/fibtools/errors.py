"""Exception hierarchy shared by all modules."""


class FibError(ValueError):
    """Base class for domain errors (bad indices, unmet preconditions)."""


class IndexRangeError(FibError):
    """An index lies outside the range an operation supports."""


class PreconditionError(FibError):
    """Input violates an operation's documented precondition."""
