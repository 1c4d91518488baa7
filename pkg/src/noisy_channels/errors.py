"""Exception types raised across the package."""


class ChannelError(ValueError):
    """Base class for all domain errors."""


class NonHermitianError(ChannelError):
    pass


class DimensionTooLargeError(ChannelError):
    pass


class DimensionMismatchError(ChannelError):
    pass


class ConvergenceError(ChannelError):
    pass


class InvalidSpectrumError(ChannelError):
    pass


class InvalidStateError(ChannelError):
    pass


class BlochOutOfBallError(ChannelError):
    pass


class EnsembleInvalidError(ChannelError):
    pass


class ParamOutOfRangeError(ChannelError):
    pass


class SpecInvalidError(ChannelError):
    pass


class TooFewRecordsError(ChannelError):
    pass


class ConsistencyError(ChannelError):
    """Closed-form and generic evaluation paths disagree."""
