"""Exception hierarchy shared by the kernel, the pipeline and the CLI.

Everything derives from ``ValueError`` so callers that only care about bad input
can keep catching the builtin. The CLI maps the two branches to exit codes:

    - SystemParseError / InputError -> 1
    - ComputationError and subclasses -> 2
"""

from __future__ import annotations


class DiscVarError(ValueError):
    """Base class for every error raised by discvar."""


class SystemParseError(DiscVarError):
    """Syntax error in a system description, with a 1-based position."""

    def __init__(self, line: int, column: int, message: str):
        self.line = line
        self.column = column
        self.message = message
        super().__init__(f"line {line}, column {column}: {message}")


class InputError(DiscVarError):
    """Well-formed text that does not describe a valid system or component."""


class ComputationError(DiscVarError):
    """Failure inside the algebra kernel or the finite-field oracle."""


class RingMismatchError(ComputationError):
    pass


class UnknownVariableError(ComputationError):
    pass


class IncompleteAssignmentError(ComputationError):
    pass


class ZeroPolynomialError(ComputationError):
    pass


class DegreeOverflowError(ComputationError):
    pass


class OrderMismatchError(ComputationError):
    pass


class BadPrimeError(ComputationError):
    """A coefficient denominator vanishes modulo the chosen prime."""

    def __init__(self, prime: int, message: str | None = None):
        self.prime = prime
        super().__init__(message or f"bad prime {prime}: a denominator vanishes modulo {prime}")


class EnumerationGuardError(ComputationError):
    pass


class SaturationCertificateError(ComputationError):
    pass
