"""Exception types shared across the package."""


class CutspaceError(Exception):
    """Base class for all package errors."""


class UnknownElement(CutspaceError):
    """A point reference does not belong to the carrier."""


class ValidationError(CutspaceError):
    """A presentation violates its structural invariants."""


class UnsupportedCombination(CutspaceError):
    """The (carrier, topology) pair has no decision table."""


class EmptyFamily(CutspaceError):
    """A family operation received no members."""


class EmptySet(CutspaceError):
    """An operation that needs a nonempty set received an empty one."""


class NotDirectedFamily(CutspaceError):
    """A directed family was required but the input is not directed."""


class NotALattice(CutspaceError):
    """A finite poset lacks some binary join or meet."""


class NotApplicable(CutspaceError):
    """The operation's hypothesis does not hold for this input."""


class InternalCheckFailure(CutspaceError):
    """A witness guaranteed to exist was not found; always a bug."""


class OutOfRange(CutspaceError):
    """A size parameter is outside the supported range."""


class UnknownSuite(CutspaceError):
    """No suite is registered under the requested name."""


class DslError(CutspaceError):
    """Base class for description-file errors, with a source position."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{line}:{column}: {message}"
        super().__init__(message)


class ParseError(DslError):
    """The description text does not match the grammar."""


class ResolutionError(DslError):
    """A name used in the description was never declared."""
