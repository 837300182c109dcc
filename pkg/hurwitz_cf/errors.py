"""
Hurwitz CF Toolkit - Error Hierarchy

This module defines the exceptions raised by the numeric modules. Every exception
carries a stable ``error_code`` that the core facade copies into
``OperationResult.error_code`` and the CLI maps onto exit codes.
"""

from typing import Optional


class HurwitzToolkitError(Exception):
    """Base class for every toolkit error"""

    error_code = "TOOLKIT_ERROR"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class PrecisionExhausted(HurwitzToolkitError):
    """An interval real could not decide a comparison within the precision cap"""

    error_code = "PRECISION_EXHAUSTED"

    def __init__(self, message: str, cap_bits: Optional[int] = None):
        if cap_bits is not None:
            message = f"{message} (precision cap {cap_bits} bits)"
        super().__init__(message)
        self.cap_bits = cap_bits


class DivisionByZero(HurwitzToolkitError, ZeroDivisionError):
    """Reciprocal or quotient of an exact zero"""

    error_code = "DIVISION_BY_ZERO"


class ZeroDenominator(HurwitzToolkitError, ZeroDivisionError):
    """An intermediate denominator vanished while folding a prefix"""

    error_code = "ZERO_DENOMINATOR"


class KindMismatch(HurwitzToolkitError, TypeError):
    """Expansion kind does not match the operation"""

    error_code = "KIND_MISMATCH"


class InsufficientTerms(HurwitzToolkitError):
    """Not enough partial quotients for the requested index or width"""

    error_code = "INSUFFICIENT_TERMS"


class DeltaOutOfRange(HurwitzToolkitError, ValueError):
    """Approximation quality threshold outside the admissible range"""

    error_code = "DELTA_OUT_OF_RANGE"


class InvalidParameter(HurwitzToolkitError, ValueError):
    """Parameter rejected by a precondition"""

    error_code = "INVALID_PARAMETER"


class LiteralParseError(HurwitzToolkitError, ValueError):
    """Malformed exact literal"""

    error_code = "PARSE_ERROR"

    def __init__(self, message: str, text: str = "", position: int = 0):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.text = text
        self.position = position


class FieldMismatch(HurwitzToolkitError, ValueError):
    """Arithmetic between surds of different quadratic fields"""

    error_code = "FIELD_MISMATCH"


class SquarefreeBoundExceeded(HurwitzToolkitError, ValueError):
    """Radicand cofactor too large to certify as squarefree"""

    error_code = "SQUAREFREE_BOUND_EXCEEDED"


class InvalidQuotientSequence(HurwitzToolkitError, ValueError):
    """Sequence is not a valid Hurwitz expansion"""

    error_code = "INVALID_SEQUENCE"

    def __init__(self, message: str, index: Optional[int] = None, reason: Optional[str] = None):
        super().__init__(message)
        self.index = index
        self.reason = reason


class UnknownProperty(HurwitzToolkitError, ValueError):
    """Verification property name not registered"""

    error_code = "UNKNOWN_PROPERTY"
