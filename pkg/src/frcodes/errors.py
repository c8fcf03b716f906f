"""Exception hierarchy shared across the package."""


class FRError(Exception):
    """Base class for all package errors."""


class InvalidCode(FRError, ValueError):
    """A matrix, code or graph does not satisfy its structural contract."""


class DimensionMismatch(FRError, ValueError):
    """Matrix shape disagrees with the parameters it is checked against."""


class ConstructionError(FRError):
    """A deterministic construction could not produce a valid object."""


class ConstructionStalled(ConstructionError):
    """No legal placement exists at some step of the incidence fill."""

    def __init__(self, message, partial=None, row=None, step=None):
        super().__init__(message)
        self.partial = partial
        self.row = row
        self.step = step


class IterationBoundExceeded(ConstructionError):
    """The incidence fill ran past its placement safety bound."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class NotCompletable(ConstructionError):
    """A graph or adjacency construction cannot reach the target degree."""

    def __init__(self, message, row=None):
        super().__init__(message)
        self.row = row


class BudgetError(FRError):
    """A search or enumeration exceeded its configured budget."""


class SearchBudgetExceeded(BudgetError):
    def __init__(self, message, partial_best=None):
        super().__init__(message)
        self.partial_best = partial_best


class SizeTooLarge(BudgetError):
    """An exhaustive oracle was asked to run above its size bound."""


class SubsetBudgetExceeded(BudgetError):
    """Too many node subsets to enumerate exhaustively."""


class NoReplica(FRError):
    """A lost packet has no surviving copy, so uncoded repair is impossible."""
