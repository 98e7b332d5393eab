"""Exception hierarchy shared by all modules."""


class SepsetsError(Exception):
    """Base class for every error raised by this package."""


class PreconditionViolated(SepsetsError):
    pass


class MissingEntry(SepsetsError):
    """A function table is not total on its domain."""


class DomainMismatch(SepsetsError):
    pass


class CarrierMismatch(SepsetsError):
    pass


class CarrierTooLarge(SepsetsError):
    """An enumeration would exceed the configured bound."""


class NotInjective(SepsetsError):
    pass


class NotASubfamily(SepsetsError):
    pass


class NotAMetric(SepsetsError):
    pass


class MissingTransport(SepsetsError):
    pass


class IndexNotDiscrete(SepsetsError):
    pass


class NotInPiSet(SepsetsError):
    pass


class NotCompatible(SepsetsError):
    pass


class NotAffine(SepsetsError):
    pass


class EmptyValueUniverse(SepsetsError):
    pass


class InvalidStructure(SepsetsError):
    """A declared structure violates a construction invariant."""


class UnknownLawId(SepsetsError):
    pass


class SpecFileError(SepsetsError):
    """Base class for spec-document diagnostics; carries a location."""

    def __init__(self, message: str, line: int = 0, col: int = 0):
        super().__init__(message)
        self.message = message
        self.line = line
        self.col = col

    def __str__(self) -> str:
        if self.line:
            return f"line {self.line}, col {self.col}: {self.message}"
        return self.message


class ParseError(SpecFileError):
    pass


class UndeclaredName(SpecFileError):
    pass


class DuplicateName(SpecFileError):
    pass


class MalformedRational(SpecFileError):
    pass
