"""Exception hierarchy shared by every module of the package."""


class PetalError(ValueError):
    """Base class for all validation and domain errors raised here."""


class Empty(PetalError):
    pass


class NotBijection(PetalError):
    pass


class EvenPetalCount(PetalError):
    pass


class TooSmall(PetalError):
    pass


class TooLarge(PetalError):
    pass


class IndexOutOfRange(PetalError):
    pass


class NotStrictlyOrdered(PetalError):
    pass


class NonCanonicalTwists(PetalError):
    """Raised by the geometric realization, which only models canonical twists."""


class InvalidResolution(PetalError):
    pass


class OpenCurve(PetalError):
    pass


class DegenerateSegment(PetalError):
    pass


class NonIntegerTurning(PetalError):
    pass


class OpenTangle(PetalError):
    pass


class ComponentCountNotOne(PetalError):
    pass


class TooManyCrossings(PetalError):
    pass


class NoAdjacentPair(PetalError):
    pass


class InvalidPattern(PetalError):
    pass


class ParseError(PetalError):
    pass
