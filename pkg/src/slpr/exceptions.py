"""
Error hierarchy shared by every SLPR module.
"""


class SlprError(ValueError):
    """Base class for all toolkit errors."""


class DegeneratePolygon(SlprError):
    """Polygon with too few vertices, repeated vertices, zero area or self-intersections."""


class InvalidRect(SlprError):
    """Axis rectangle with non-positive width or height, or non-finite bounds."""


class EncodingFailure(SlprError):
    """A sliding line did not meet the polygon boundary."""


class DegenerateRestoration(SlprError):
    """A restored polygon collapsed to (near) zero area."""


class FitFailure(SlprError):
    """Quadrilateral fitting could not produce four well-defined sides."""


class SizeMismatch(SlprError):
    """Coordinate vectors do not have the expected 2n length."""


class ParseError(SlprError):
    """Malformed annotation, detection or target line."""


class FormatError(SlprError):
    """A region cannot be written in the requested output grammar."""


class InvalidSpec(SlprError):
    """Synthetic shape specification is malformed or out of range."""


class NoIntersection(SlprError):
    """Oracle line does not meet the analytic shape."""


class InvalidScore(SlprError):
    """Detection score outside [0, 1] or not finite."""
