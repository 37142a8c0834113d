class QuadError(Exception):
    """Base class for library errors."""


class ValidationError(QuadError):
    pass


class GeometryError(QuadError):
    pass


class OnRealizationError(GeometryError):
    """A query point lies on an edge or vertex of the drawing."""


class DomainError(QuadError):
    pass


class ContinuationError(QuadError):
    pass


class ParseError(QuadError):
    def __init__(self, msg: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {msg}" if line is not None else msg)
