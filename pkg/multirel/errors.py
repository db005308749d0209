"""Exception hierarchy for the relational calculus, the law engine and the model parser."""

from __future__ import annotations


class MultirelError(ValueError):
    """Base class of every error raised by this package.

    Errors raised while reading model text carry the 1-based ``line`` and
    ``column`` of the offending token; elsewhere both are 0.
    """

    def __init__(self, message: str, line: int = 0, column: int = 0) -> None:
        self.line = line
        self.column = column
        if line:
            message = f"line {line}:{column}: {message}"
        super().__init__(message)


class DuplicateElement(MultirelError):
    pass


class EmptyCarrier(MultirelError):
    pass


class UnknownElement(MultirelError):
    pass


class CarrierMismatch(MultirelError):
    pass


class CarrierTooLarge(MultirelError):
    pass


class NotSubidentity(MultirelError):
    pass


class EnumerationCapExceeded(MultirelError):
    pass


class UniverseTooLarge(MultirelError):
    pass


class ModelSyntaxError(MultirelError):
    pass


class UnknownCarrier(MultirelError):
    pass


class DuplicateName(MultirelError):
    pass
