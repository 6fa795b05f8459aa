"""Exception types shared across the toolkit."""


class SrsKitError(Exception):
    """Base class for all srskit errors."""


class OutOfRangeError(SrsKitError):
    """A scalar argument fell outside its allowed interval."""


class BoundsViolationError(SrsKitError):
    """Actuator length changes exceed the configured strain limits."""


class DimensionMismatchError(SrsKitError):
    """Array sizes are inconsistent with the configured sample grid."""


class DegenerateCurveError(SrsKitError):
    """A discretized curve has a vanishing tangent or repeated points."""


class DegenerateFrameError(SrsKitError):
    """A local frame could not be built from the curve tangent."""


class NoConvergenceError(SrsKitError):
    """The IK solver failed to converge within the configured tolerances."""

    def __init__(self, message, frame_index=None, solution=None):
        super().__init__(message)
        self.frame_index = frame_index
        self.solution = solution


class ConfigError(SrsKitError):
    """A configuration file is missing, malformed, or inconsistent."""


class EmptyTrajectoryError(SrsKitError):
    """A trajectory with no samples was passed where data is required."""
