"""Exception hierarchy shared by all modules."""


class RingFanoError(Exception):
    """Base class for every error raised by this package."""


class InvalidInputError(RingFanoError, ValueError):
    """Vertex out of range, duplicated vertex, malformed parameter."""


class UnsupportedError(RingFanoError, ValueError):
    """A request outside the supported domain (e.g. composite q, |U| = 3)."""


class InvalidLabelingError(InvalidInputError):
    """A ring labeling that collapses some edge onto fewer than 3 vertices."""


class IntegrityError(RingFanoError, RuntimeError):
    """A witness failed re-verification; indicates a caller or upstream bug."""


class DeskScaleCapError(RingFanoError, ValueError):
    """Exhaustive search refused because the instance exceeds the size cap."""


class FormatError(RingFanoError, ValueError):
    """A graph file could not be parsed."""

    def __init__(self, message: str, path=None, line: int | None = None):
        self.path = None if path is None else str(path)
        self.line = line
        where = ""
        if self.path is not None:
            where = f"{self.path}"
            if line is not None:
                where += f":{line}"
            where += ": "
        super().__init__(where + message)
