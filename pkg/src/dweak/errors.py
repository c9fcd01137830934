"""Exception types shared across the package."""


class DweakError(Exception):
    """Base class for all package errors."""


class MembershipError(DweakError):
    """A point is not a member of the space it was used with."""


class UnsupportedSpaceError(DweakError):
    """The operation is not defined for this space variant."""


class NotNormedSpaceError(UnsupportedSpaceError):
    """The operation needs a normed linear space."""


class EmptyInputError(DweakError):
    """An operation received an empty collection where points were required."""


class NotUnitVectorError(DweakError):
    """A direction vector does not have unit norm."""


class ZeroScaleError(DweakError):
    """The scale factor of a shift/scale transform must be nonzero."""


class EqualPointsError(DweakError):
    """Two distinct points were required."""


class PreconditionFailedError(DweakError):
    """The observed data does not satisfy the operation's hypothesis."""


class InvalidSpaceError(DweakError):
    """A space description failed validation."""


class NotEventuallyPeriodicError(DweakError):
    """The exact oracle needs an eventually periodic sequence."""


class StabilizationError(DweakError):
    """Values did not stabilize within the allotted horizon."""


class ScenarioParseError(DweakError):
    """A scenario document is malformed."""


class ExecutionError(DweakError):
    """A requested check could not be executed."""
