"""Exception hierarchy.

Every error raised on purpose by wordlab derives from :class:`WordlabError`.
Errors about bad arguments additionally derive from :class:`ValueError`.
"""


class WordlabError(Exception):
    pass


class InvalidParameter(WordlabError, ValueError):
    pass


class NonProlongableMorphism(InvalidParameter):
    pass


class BoundaryAmbiguity(WordlabError):
    """An inexact orbit point landed too close to a partition endpoint."""

    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step


class IndexOutOfRange(WordlabError, IndexError):
    pass


class LengthOutOfRange(InvalidParameter):
    pass


class EmptyWord(InvalidParameter):
    pass


class MixedLengths(InvalidParameter):
    pass


class NonPrimitiveSubstitution(InvalidParameter):
    pass


class NotLowComplexity(InvalidParameter):
    pass


class InconsistentSet(InvalidParameter):
    pass


class BlockTooLong(InvalidParameter):
    pass


class NotSquare(InvalidParameter):
    pass


class DimensionMismatch(InvalidParameter):
    pass


class SingularMatrix(WordlabError):
    pass


class NotTernary(InvalidParameter):
    pass


class NotBinary(InvalidParameter):
    pass


class NoDeviationTwo(WordlabError):
    pass


class NotThreeClasses(WordlabError):
    pass


class LetterNotInAlphabet(InvalidParameter):
    pass


class DegenerateBox(InvalidParameter):
    pass


class LengthMismatch(InvalidParameter):
    pass


class ResourceBound(WordlabError):
    """Search node budget exhausted; ``partial`` holds what was computed."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial
