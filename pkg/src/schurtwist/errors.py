"""Named exceptions shared by every module.

Each error carries an optional ``witness`` so the CLI can report the
offending data instead of a bare message.
"""


class SchurTwistError(Exception):
    """Base class; ``name`` is the stable identifier used in JSON reports."""

    def __init__(self, message="", witness=None):
        super().__init__(message)
        self.witness = witness

    @property
    def name(self):
        return type(self).__name__


class NotAUnit(SchurTwistError, ArithmeticError):
    pass


class NotNilpotent(SchurTwistError):
    pass


class ChainUnavailable(SchurTwistError):
    pass


class FlavorMismatch(SchurTwistError):
    pass


class EmptySchur(SchurTwistError):
    pass


class NoSolution(SchurTwistError):
    pass


class RankTooSmall(SchurTwistError):
    pass


class InvalidModule(SchurTwistError):
    pass


class ShapeMismatch(SchurTwistError):
    pass


class NotScalar(SchurTwistError):
    pass


class ContextNotSemistable(SchurTwistError):
    pass


class NotConjInvariant(SchurTwistError):
    pass


class HypothesisNotMet(SchurTwistError):
    pass


class ParseError(SchurTwistError):
    pass
