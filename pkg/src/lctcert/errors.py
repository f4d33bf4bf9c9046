"""Exception hierarchy shared by every module."""


class LctCertError(Exception):
    """Base class for all package errors."""


class InputError(LctCertError, ValueError):
    """Malformed or out-of-contract argument."""


class BasketError(LctCertError):
    """Stratum analysis produced a non-integral count or a non-terminal type."""


class DataError(LctCertError):
    """Dataset violates its schema or a cross-consistency rule.

    ``pointer`` is a JSON pointer into the offending document, when known.
    """

    def __init__(self, message: str, pointer: str = ""):
        self.pointer = pointer
        super().__init__(f"{pointer}: {message}" if pointer else message)


class IndeterminateError(LctCertError):
    """A required geometric fact is missing."""


class TableMismatchError(LctCertError):
    """A recomputed table cell disagrees with the transcribed value."""

    def __init__(self, message: str, cells: list | None = None):
        self.cells = cells or []
        super().__init__(message)
