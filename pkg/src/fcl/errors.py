"""Exception hierarchy for the fcl interpreter."""


class FclError(Exception):
    """Base class for every error raised by the language."""

    def __init__(self, message, span=None):
        super().__init__(message)
        self.message = message
        self.span = span


class LexError(FclError):
    pass


class ParseError(FclError):
    def __init__(self, message, span=None, incomplete=False):
        super().__init__(message, span)
        # True when the input ended before the expression did (REPL continuation).
        self.incomplete = incomplete


class EvalError(FclError):
    pass


class UnboundNameError(EvalError):
    pass


class ValueTypeError(EvalError):
    pass


class ArityError(EvalError):
    pass


class MissingArgError(EvalError):
    pass


class FcError(EvalError):
    pass


class PipeError(EvalError):
    pass


class StageError(EvalError):
    """A stage of a function-list pipeline failed."""

    def __init__(self, index, label, cause):
        super().__init__(f"stage {index} ({label}) failed: {cause.message}")
        self.index = index
        self.label = label
        self.cause = cause


class FclWarning(UserWarning):
    pass
