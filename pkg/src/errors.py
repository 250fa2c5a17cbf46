"""Exception hierarchy for strip-tilings.

Every library error derives from TilingError and from the closest builtin,
so callers can catch either.
"""

from typing import Optional, Tuple

Position = Tuple[int, int]


class TilingError(Exception):
    """Base class for all strip-tilings errors."""


class InvalidArcError(TilingError, ValueError):
    """An arc violates its index constraints."""


class InvalidTriangulationError(TilingError, ValueError):
    """A diagonal set is not a triangulation of its polygon."""


class ContinuantError(TilingError, ArithmeticError):
    """A continuant reached a non-positive value."""


class NotAFriezeError(TilingError, ArithmeticError):
    """Frieze propagation failed: the seed does not come from a frieze."""

    def __init__(self, message: str, position: Optional[Position] = None):
        super().__init__(message)
        self.position = position


class InvalidWindowError(TilingError, ValueError):
    """A window has the wrong shape or a non-positive entry."""


class WindowTooSmallError(TilingError, ValueError):
    """A window cannot hold a single instance of the requested quantity."""


class InconsistentWindowError(TilingError, ValueError):
    """Values that must agree inside a valid tiling window do not."""


class FillError(TilingError, ArithmeticError):
    """Determinant propagation failed at a position."""

    def __init__(self, message: str, position: Optional[Position] = None):
        super().__init__(message)
        self.position = position


class UnsolvableFillError(FillError):
    """Some requested cell is never closed by a block with one unknown."""


class InexactDivisionError(FillError):
    """A determinant rule required a non-integral quotient."""


class NonPositiveEntryError(FillError):
    """A seed or computed entry is not a positive integer."""


class LinearizationError(TilingError, ValueError):
    """Neighbouring rows or columns are not in a constant integral ratio."""


class ZigZagError(TilingError, ValueError):
    """The positions of 1 in a window do not form a zig-zag path."""


class NotEnoughOnesError(ZigZagError):
    """The window shows no continuation of the zig-zag path."""


class SpecValidationError(TilingError, ValueError):
    """A periodic triangulation presentation failed validation."""

    def __init__(self, report):
        super().__init__(f"invalid triangulation spec:\n{report.format()}")
        self.report = report


class DocumentSyntaxError(TilingError, ValueError):
    """A text document could not be parsed."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class WellDefinednessError(TilingError, RuntimeError):
    """Two evaluations of the same tiling entry disagree."""
