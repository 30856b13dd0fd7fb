"""Exception types raised on invalid input."""


class JatermError(ValueError):
    """Base class; ``lineno`` is set when the error points at an input line."""

    def __init__(self, message: str, lineno: int | None = None):
        super().__init__(message)
        self.lineno = lineno


class CorpusParseError(JatermError):
    pass


class TagMapError(JatermError):
    pass


class GrammarError(JatermError):
    pass
