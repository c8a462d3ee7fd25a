"""Exception hierarchy for the goimll package."""


class GoimllError(Exception):
    """Base class for all package-specific errors."""


class CarrierError(GoimllError):
    """An operation received graphs/projects whose vertex sets violate its
    locative precondition (overlap, mismatch, or missing containment)."""


class LocativityError(CarrierError):
    """Domain and image of a relocation overlap where they must not."""


class DelocationError(GoimllError):
    """A delocation does not cover the carrier it is applied to, or is not
    injective."""


class NonTotalError(GoimllError):
    """A simplified graph has (or would have) an infinite weight; typically
    raised when a feedback equation has no solution (infinite interaction)."""


class CutUndefinedError(GoimllError):
    """Cut of two projects whose interaction is infinite."""


class ConvergenceError(GoimllError):
    """An iterative numerical routine failed to converge.

    Carries the last iterate in ``last_iterate`` for diagnosis."""

    def __init__(self, message, last_iterate=None):
        super().__init__(message)
        self.last_iterate = last_iterate


class ProofError(GoimllError):
    """A proof script is syntactically or structurally invalid.

    ``line`` and ``column`` locate syntax errors; both are ``None`` for
    structural (rule side condition) violations."""

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class FormatError(GoimllError):
    """A graph/project/matrix text file does not follow its format."""
