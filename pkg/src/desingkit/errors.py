"""Exception hierarchy shared by every desingkit module."""

from __future__ import annotations


class DesingError(Exception):
    """Base class for all desingkit errors."""


class PolySyntaxError(DesingError, ValueError):
    """Malformed polynomial text."""

    def __init__(self, text: str, pos: int, expected: str):
        self.text = text
        self.pos = pos
        self.expected = expected
        found = text[pos] if pos < len(text) else "end of input"
        super().__init__(f"position {pos}: expected {expected}, found {found!r} in {text!r}")


class VarOutOfRange(DesingError, IndexError):
    pass


class DimensionMismatch(DesingError, ValueError):
    pass


class NotSquare(DimensionMismatch):
    pass


class DegreeMismatch(DesingError, ValueError):
    pass


class SingularMatrix(DesingError, ValueError):
    pass


class NotLinear(DesingError, ValueError):
    pass


class BadParameter(DesingError, ValueError):
    pass


class InvalidAlgebra(DesingError, ValueError):
    """Structure constants that are malformed or fail the Jacobi identity."""

    def __init__(self, message: str, triple: tuple[int, int, int] | None = None):
        self.triple = triple
        super().__init__(message)


class NotDim3(DesingError, ValueError):
    pass


class NotDecomposable(DesingError, ValueError):
    pass


class NotInvolutive(DesingError, ValueError):
    pass


class NonPolynomialBracket(DesingError, ValueError):
    pass


class NotInvertible(DesingError, ValueError):
    pass


class NotPoisson(DesingError, ValueError):
    pass


class Semisimple3D(DesingError, ValueError):
    pass


class BadComponents(DesingError, ValueError):
    pass


class SchemaError(DesingError, ValueError):
    """A JSON document does not follow the expected layout."""


class CertificateError(DesingError, RuntimeError):
    """A constructed certificate failed its own verification (internal bug)."""
