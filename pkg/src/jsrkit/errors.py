"""Exception hierarchy shared by all jsrkit modules."""


class JsrError(Exception):
    """Base class for every error raised by jsrkit."""


class NonConvergence(JsrError):
    pass


class DegenerateLeading(JsrError):
    """The leading eigenvalue is not unique or not simple."""

    def __init__(self, message, leading=None):
        super().__init__(message)
        self.leading = leading


class EmptyWord(JsrError):
    pass


class NumericBreakdown(JsrError):
    pass


class BudgetExceeded(JsrError):
    pass


class CycleMismatch(JsrError):
    pass


class MismatchedNu(JsrError):
    pass


class DuplicateCandidates(JsrError):
    pass


class DimensionMismatch(JsrError):
    pass


class NegativeEntry(JsrError):
    pass


class NegativeInput(JsrError):
    pass


class NoDeadNodes(JsrError):
    pass


class InputError(JsrError):
    """Malformed user input (family files, law files, flags)."""
