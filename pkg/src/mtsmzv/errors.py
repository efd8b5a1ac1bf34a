"""Exception types shared across the package."""


class InvalidIndexError(ValueError):
    """An index violates the precondition of the requested operation."""


class DivergentSeriesError(ValueError):
    """The requested (multiple) zeta series does not converge."""


class NotAnIndexWordError(ValueError):
    """A word over {x, y} that does not start with ``y``."""


class PoleError(ValueError):
    """Evaluation point lies (numerically) on an integer pole."""
