"""Exception types shared across the package."""


class OTCodesError(Exception):
    """Base class for all errors raised by otcodes."""


class RankDeficient(OTCodesError):
    pass


class NoDual(OTCodesError):
    pass


class TooLarge(OTCodesError):
    """An enumeration or linear-algebra block exceeds its configured cap."""

    def __init__(self, message: str, required: int | None = None):
        super().__init__(message)
        self.required = required


class NoCircuits(OTCodesError):
    pass


class DegenerateDual(OTCodesError):
    """The dual arrangement has a zero vector (d = 1), so no hyperplane exists for it."""


class MalformedDependency(OTCodesError):
    pass


class Truncated(OTCodesError):
    pass


class NotCM(OTCodesError):
    pass


class InputError(OTCodesError):
    """A code file could not be loaded."""
