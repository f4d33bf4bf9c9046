"""Exact arithmetic checks for log canonical threshold certificates of Fano 3-folds."""

from .certificate import Certificate, assemble_certificate
from .errors import BasketError, DataError, IndeterminateError, InputError, LctCertError, TableMismatchError
from .famdb import Database, load_database, load_default, validate_database
from .results import CheckResult, Status

__all__ = [
    "BasketError",
    "Certificate",
    "CheckResult",
    "DataError",
    "Database",
    "IndeterminateError",
    "InputError",
    "LctCertError",
    "Status",
    "TableMismatchError",
    "assemble_certificate",
    "load_database",
    "load_default",
    "validate_database",
]
__version__ = "0.1.0"
