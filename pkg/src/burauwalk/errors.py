"""Exception hierarchy shared by all modules."""


class BurauError(Exception):
    """Base class for every error raised by the package."""


class DomainError(BurauError, ValueError):
    """A mathematically invalid request (pole, non-positive diagram, ...)."""


class DiagramError(BurauError, ValueError):
    """A diagram violates one of the string-link invariants."""


class TangleSyntaxError(DiagramError):
    """Malformed tangle file or braid word, with 1-based location."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "")
            message = f"{where}: {message}"
        super().__init__(message)


class MoveError(DomainError):
    """The pattern required by a Reidemeister move is absent."""


class SingularSystemError(BurauError, RuntimeError):
    """The walk system has no unique solution; indicates a validation bug."""
