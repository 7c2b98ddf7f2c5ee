"""Exception hierarchy shared across the package."""


class BSLabError(Exception):
    """Base class for every error raised by bslab."""


class ParseError(BSLabError, ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class RingMismatchError(BSLabError, ValueError):
    pass


class ResourceLimitError(BSLabError):
    """A configured cap on pairs or basis size was hit; no answer was produced."""

    def __init__(self, message: str, *, pairs: int = 0, basis_size: int = 0):
        super().__init__(message)
        self.pairs = pairs
        self.basis_size = basis_size


class PreconditionError(BSLabError, ValueError):
    """Input violates an operation's precondition (e.g. not quasi-homogeneous)."""


class NonsingularError(PreconditionError):
    pass


class InternalInconsistencyError(BSLabError, AssertionError):
    """A mathematically impossible state was reached; indicates a bug."""
