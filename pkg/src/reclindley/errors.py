"""Exception hierarchy shared by every module."""


class ReclindleyError(Exception):
    """Base class for library errors."""


class DomainError(ReclindleyError, ValueError):
    """An argument lies outside the domain of the function."""


class DataError(ReclindleyError, ValueError):
    """Observations are unusable (non-positive, empty, ...)."""


class DegenerateDataError(DataError):
    """Observations carry no spread, so a fit cannot be initialised."""


class ParseError(DataError):
    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class DatasetLookupError(ReclindleyError, KeyError):
    pass


class CorruptionError(ReclindleyError):
    """A bundled dataset no longer matches its recorded checksum."""


class NumericError(ReclindleyError, ArithmeticError):
    pass


class HazardOverflowError(NumericError, OverflowError):
    """Reliability underflowed, so the hazard ratio is not representable."""
