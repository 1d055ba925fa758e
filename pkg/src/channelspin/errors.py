"""Exception types raised across the package."""


class ChannelSpinError(ValueError):
    """Base class for all errors raised by channelspin."""


class DomainError(ChannelSpinError):
    """Arguments outside the supported domain of an operation."""


class ContractError(ChannelSpinError):
    """A precondition on a matrix argument (shape, Hermiticity) was violated."""


class UnphysicalPolarizationError(ChannelSpinError):
    """Polarization vector with norm larger than one."""


class ProjectionNullError(ChannelSpinError):
    """The state has (numerically) no weight in the spin-1 channel."""


class FrameDegenerateError(ChannelSpinError):
    """The polarization geometry does not define a unique frame."""


class DegenerateGeometryError(ChannelSpinError):
    """Closed-form spinor angles are undefined at this (p, theta)."""
