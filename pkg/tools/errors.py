"""
Error taxonomy shared by every Galilean tool module.

All errors derive from GalileanError (a ValueError), so callers that only
care about bad input can catch one class.
"""


class GalileanError(ValueError):
    """Base class for every error raised by the library."""


class NonInvertible(GalileanError):
    """Scalar part (or real matrix part) is zero within tolerance."""


class DimensionMismatch(GalileanError):
    """Matrix shapes do not fit the operation."""


class MalformedRepElement(GalileanError):
    """Payload does not match the pattern of its representation."""


class Unsupported(GalileanError):
    """Operation is not defined for the requested representation."""


class NonNormalizable(GalileanError):
    """Homogeneous pair has a zero scalar part in its second coordinate."""


class NotInLambda1(GalileanError):
    """Grassmann element does not have unit scalar part."""


class NotAPointElement(GalileanError):
    """Cl3 element is not of the form e3 + y e2e3 + z e1e2e3."""


class EmptyInput(GalileanError):
    """A command needed at least one input item and got none."""


class BadGridSpec(GalileanError):
    """Grid specification could not be parsed or is not finite."""


class ParseError(GalileanError):
    """Text or JSON input could not be parsed."""
