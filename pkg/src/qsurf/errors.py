"""Exception types shared across the package."""


class QsurfError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(QsurfError):
    """Malformed boundary-word text.

    ``offset`` is the byte offset of the first offending character.
    """

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset


class MixedSyntaxError(ParseError):
    """Compact single-letter notation mixed into a long-form word."""


class NotPairedError(QsurfError):
    """A letter occurs a number of times different from two."""


class UnsupportedWordError(QsurfError):
    """The word is paired but its boundary quotient is not a wedge of circles."""


class NearZeroError(QsurfError):
    """Curve passes too close to the winding base point."""


class NonIntegralError(QsurfError):
    """Accumulated argument is not close enough to an integer number of turns."""


class InvalidInvariantError(QsurfError):
    """(N, k) outside the admissible range 0 <= k <= N."""


class IndexRangeError(QsurfError):
    """Generator index outside the valid range for the given (N, k)."""


class NotContractionError(QsurfError):
    """Operator norm exceeds 1 beyond the allowed rounding slack."""


class ShapeError(QsurfError):
    """Mismatched block count or matrix dimensions."""
