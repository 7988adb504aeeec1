"""
Exception hierarchy for the Coherence Fraction SDK.
"""

from typing import Optional


class CoherenceError(Exception):
    """Base class for every error raised by the SDK."""


class ValidationError(CoherenceError, ValueError):
    """A value violated one of its construction invariants."""

    def __init__(self, invariant: str, magnitude: Optional[float] = None, detail: str = ""):
        self.invariant = invariant
        self.magnitude = magnitude
        message = invariant
        if magnitude is not None:
            message += f" (worst offending magnitude {magnitude:.3e})"
        if detail:
            message += f": {detail}"
        super().__init__(message)


class NotHermitian(ValidationError):
    def __init__(self, magnitude: float):
        super().__init__("NotHermitian", magnitude, "max |rho_jk - conj(rho_kj)| exceeds tolerance")


class TraceNotOne(ValidationError):
    def __init__(self, magnitude: float):
        super().__init__("TraceNotOne", magnitude, "|tr(rho) - 1| exceeds tolerance")


class NotPositive(ValidationError):
    def __init__(self, magnitude: float):
        super().__init__("NotPositive", magnitude, "smallest eigenvalue is below -tolerance")


class NotNormalized(ValidationError):
    def __init__(self, magnitude: float):
        super().__init__("NotNormalized", magnitude, "|sum |amplitude|^2 - 1| exceeds tolerance")


class InvalidPhase(ValidationError):
    def __init__(self, magnitude: float, detail: str = ""):
        super().__init__("InvalidPhase", magnitude, detail)


class IncompleteKraus(ValidationError):
    def __init__(self, magnitude: float):
        super().__init__("IncompleteKraus", magnitude, "max |sum K^dagger K - I| exceeds tolerance")


class ValidationFailed(ValidationError):
    """A channel output failed state validation (non-CPTP input slipped through)."""

    def __init__(self, cause: ValidationError):
        super().__init__("ValidationFailed", cause.magnitude, f"channel output violated {cause.invariant}")
        self.cause = cause


class DimensionMismatch(CoherenceError, ValueError):
    """Dimensions of the operands do not fit together."""


class DimensionTooLarge(CoherenceError, ValueError):
    """The requested computation is only supported for small dimensions."""


class NotApplicable(CoherenceError, ValueError):
    """The input lies outside the class the computation is claimed for."""


class OutOfRange(CoherenceError, ValueError):
    """A scalar argument lies outside its admissible interval."""


class ParamOutOfRange(CoherenceError, ValueError):
    """A channel parameter lies outside its admissible interval."""


class UnsupportedKind(CoherenceError, ValueError):
    """The channel kind has no closed form or is not supported here."""


class ParseError(CoherenceError, ValueError):
    """An input file could not be parsed into a state or channel."""


class OutputError(CoherenceError, OSError):
    """A result file could not be written."""
