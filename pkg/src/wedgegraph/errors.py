"""Exception hierarchy shared by all modules."""


class WedgeGraphError(Exception):
    """Base class for every error raised by this package."""


class InvalidInput(WedgeGraphError, ValueError):
    """Input rejected before any geometry is attempted."""


class DegenerateWedge(InvalidInput):
    pass


class TooFewPoints(InvalidInput):
    pass


class GeneralPositionViolation(InvalidInput):
    """Duplicate points or an exactly collinear triple.

    ``indices`` holds the offending input indices (two for a duplicate,
    three for a collinear triple).
    """

    def __init__(self, message, indices=()):
        super().__init__(message)
        self.indices = tuple(indices)


class SizeMismatch(InvalidInput):
    pass


class InternalError(WedgeGraphError, RuntimeError):
    """A construction post-check failed; indicates a bug or tolerance issue."""


class DegenerateBaseline(InvalidInput):
    """The baseline contact coincides with a good-pair contact."""


class CoverageViolation(InternalError):
    pass


class ConvergenceFailure(InternalError):
    pass
