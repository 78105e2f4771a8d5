"""Exception types shared by all modules."""


class FlagforgeError(Exception):
    pass


class DimensionMismatch(FlagforgeError, ValueError):
    pass


class FieldMismatch(FlagforgeError, ValueError):
    pass


class ContainmentError(FlagforgeError, ValueError):
    pass


class NotInvertible(FlagforgeError, ValueError):
    pass


class EmptyRestriction(FlagforgeError, ValueError):
    pass


class InvalidFlag(FlagforgeError, ValueError):
    pass


class NotAnIdeal(FlagforgeError, ValueError):
    pass


class InvalidIdempotents(FlagforgeError, ValueError):
    pass


class UnsupportedCover(FlagforgeError, ValueError):
    pass


class SchemaError(FlagforgeError, ValueError):
    """Malformed JSON input; the message carries the offending path."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path
