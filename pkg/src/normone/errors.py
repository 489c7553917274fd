"""Exception types shared across the package."""


class NormOneError(Exception):
    """Base class for errors raised by this package."""


class GroupTooLargeError(NormOneError):
    """An operation required enumerating a group past the size cutoff."""


class UnsupportedCaseError(NormOneError):
    """Input violates a stated hypothesis of the requested construction."""


class DegenerateCaseError(NormOneError):
    """Input is a degenerate small case that is rejected, not classified."""


class ComputationTooLargeError(NormOneError):
    """A verification sweep was refused because it exceeds the cost cutoff."""


class VerificationError(NormOneError):
    """An internal machine check of a constructed object failed.

    This always indicates a construction bug (or deliberately injected
    fault), never a property of the mathematical input.
    """
