"""Exception hierarchy.  Everything raised on purpose derives from GradalgError."""


class GradalgError(Exception):
    pass


class ParseError(GradalgError):
    def __init__(self, msg, line=1, col=1):
        self.msg, self.line, self.col = msg, line, col
        super().__init__(f"line {line}, column {col}: {msg}")


class RingMismatch(GradalgError):
    pass


class Unsupported(GradalgError):
    """An invariant is not certifiable for this input (e.g. rank with infinite pd)."""


class UnsupportedRing(Unsupported):
    """An operation's ring-property gate (CM, Gorenstein, ...) is not met."""


class BoundExceeded(GradalgError):
    """A homological index lies beyond an unterminated resolution."""


class NotWellDefined(GradalgError):
    """A matrix does not induce a map between the given presentations."""


class EngineError(GradalgError):
    """Internal consistency failure (a search range exhausted, etc.)."""
