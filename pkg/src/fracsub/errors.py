"""Exception hierarchy shared by every fracsub module."""


class FracSubError(Exception):
    """Base class for all library errors."""


class InvalidInstance(FracSubError, ValueError):
    """Raised when instance data violates the model's sign or shape requirements."""


class InfeasibleSet(FracSubError, ValueError):
    pass


class ItemAlreadyPresent(FracSubError, ValueError):
    pass


class ItemNotOffered(FracSubError, ValueError):
    pass


class EmptySet(FracSubError, ValueError):
    pass


class GroundSetTooLarge(FracSubError, ValueError):
    pass


class HomogeneousRatio(FracSubError, ValueError):
    """The operation needs ``b0 > 0`` but the ratio is homogeneous."""


class NotCertifiedSubmodular(FracSubError):
    pass


class UnsupportedRegion(FracSubError, ValueError):
    pass
