class ZdimError(Exception):
    """Base class for all library errors."""


class SemiringFormatError(ZdimError, ValueError):
    """Malformed semiring tables or definition file."""


class AxiomError(ZdimError):
    """A semiring definition violates a required axiom."""

    def __init__(self, message, report):
        super().__init__(message)
        self.report = report


class MatrixError(ZdimError, ValueError):
    """Bad matrix input: wrong shape, out-of-range entry, mismatched semiring."""


class BudgetExceeded(ZdimError):
    """An enumeration or search would exceed its configured cap.

    ``bounds`` optionally carries ``(lower, upper)`` for interrupted searches.
    """

    def __init__(self, message, bounds=None):
        super().__init__(message)
        self.bounds = bounds


class DisconnectedGraphError(ZdimError):
    pass
