"""Exception hierarchy shared by all modules."""


class CosetLeakError(Exception):
    """Base class for errors raised by this package."""


class InputError(CosetLeakError, ValueError):
    """Malformed or inconsistent input (dimensions, symbols, ranges)."""


class ParseError(InputError):
    """A text input could not be parsed.

    ``source`` names the file or field and ``line``/``position`` locate the
    problem when known.
    """

    def __init__(self, message, source=None, line=None, position=None):
        self.source = source
        self.line = line
        self.position = position
        where = []
        if source is not None:
            where.append(str(source))
        if line is not None:
            where.append(f"line {line}")
        if position is not None:
            where.append(f"position {position}")
        prefix = ":".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)


class UnreachableSymbolError(InputError):
    """Observed output symbol has zero probability under both inputs."""


class ResourceError(CosetLeakError, RuntimeError):
    """A configured size cap would be exceeded."""


class InvariantError(CosetLeakError, RuntimeError):
    """An internal numerical invariant was violated."""
