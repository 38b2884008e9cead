class FtftError(Exception):
    """Base error."""


class StructuralError(FtftError):
    """Malformed input: wrong shapes, unknown labels, unreadable files."""


class UnsupportedInput(FtftError):
    """Input outside the supported range of an operation."""


class PreconditionError(FtftError):
    """Well-formed input that violates an operation's precondition."""
