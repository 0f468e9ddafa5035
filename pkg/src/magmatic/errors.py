"""Exception types raised across the package."""


class MagmaError(Exception):
    """Base class for every error raised by this package."""


class ParseError(MagmaError, ValueError):
    """Malformed term text. ``offset`` is the byte offset of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.message = message
        self.offset = offset


class NotComposite(MagmaError, ValueError):
    pass


class LimitExceeded(MagmaError, ValueError):
    pass


class IndexOutOfRange(MagmaError, IndexError):
    pass


class UnmappedAtom(MagmaError, LookupError):
    def __init__(self, atom):
        super().__init__(f"atom {atom} has no image under the generator map")
        self.atom = atom


class ArityMismatch(MagmaError, ValueError):
    pass


class InvalidStep(MagmaError, ValueError):
    pass


class CapTooSmall(MagmaError, ValueError):
    pass


class TableFormatError(MagmaError, ValueError):
    """Bad Cayley-table, generator-map or component specification."""
