"""Exception hierarchy.

Two families: ``ValidationError`` for inputs outside an operation's stated
range (CLI exit code 2) and ``NumericalError`` for failures that occur while
computing (CLI exit code 1).
"""


class SemigenError(Exception):
    pass


class ValidationError(SemigenError, ValueError):
    pass


class NumericalError(SemigenError, ArithmeticError):
    pass


class BadParams(ValidationError):
    pass


class BadRadius(ValidationError):
    pass


class BadWeights(ValidationError):
    pass


class BadNormalization(ValidationError):
    pass


class BadRange(ValidationError):
    pass


class OutOfStatedRange(ValidationError):
    pass


class NonVanishingConstant(ValidationError):
    pass


class ZeroConstantTerm(NumericalError):
    pass


class DegenerateDenominator(NumericalError):
    pass


class NegativeRadicand(NumericalError):
    pass


class NoRootInRange(NumericalError):
    pass


class ArgUndefined(NumericalError):
    pass


class StepUnderflow(NumericalError):
    pass


class EscapedDisk(NumericalError):
    """The orbit left the closed unit disk; the input is not a generator at
    this truncation. ``trajectory`` holds the samples computed before escape."""

    def __init__(self, message, trajectory=None):
        super().__init__(message)
        self.trajectory = trajectory


class TruncationWarning(UserWarning):
    """Series tail is not negligible on the requested grid."""
