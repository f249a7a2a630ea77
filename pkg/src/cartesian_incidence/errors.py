"""Exception hierarchy.

Every error carries a module-qualified ``code`` so the command line can report
failures uniformly.  ``InputError`` subclasses map to exit status 1 and
``InvariantViolation`` to exit status 2.
"""

from __future__ import annotations


class IncidenceError(Exception):
    code = "core.Error"


class InputError(IncidenceError):
    code = "core.InputError"


class InvariantViolation(IncidenceError):
    """A mathematical claim that should hold was found false."""

    code = "core.InvariantViolation"


class DivisionByZero(InputError, ZeroDivisionError):
    code = "exact.DivisionByZero"


class ParseError(InputError, ValueError):
    code = "exact.ParseError"

    def __init__(self, message: str, offset: int | None = None, text: str | None = None):
        self.offset = offset
        self.text = text
        if offset is not None:
            message = f"{message} at byte {offset}"
            if text is not None:
                message += f" in {text!r}"
        super().__init__(message)


class DegenerateInput(InputError):
    code = "polynomial.DegenerateInput"


class RootAtEndpoint(InputError):
    code = "polynomial.RootAtEndpoint"


class ZeroPolynomial(InputError):
    code = "polynomial.ZeroPolynomial"


class LineOutsideField(UserWarning):
    """An axis-parallel line exists whose intercept is not in Q(i)."""


class DuplicatePoint(InputError):
    code = "incidence.DuplicatePoint"


class DuplicateLabel(InputError):
    code = "incidence.DuplicateLabel"


class ComplexityGuard(InputError):
    code = "incidence.ComplexityGuard"


class RTooLarge(InputError):
    code = "partition.RTooLarge"


class DegenerateLine(InputError):
    code = "partition.DegenerateLine"


class KTooSmall(InputError):
    code = "applications.KTooSmall"


class ZeroInA(InputError):
    code = "applications.ZeroInA"


class DegenerateSlope(InputError):
    code = "applications.DegenerateSlope"
