"""Exception taxonomy shared by all modules."""


class HartogsError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(HartogsError, ValueError):
    """A point or argument lies outside the domain of definition."""


class SingularityError(HartogsError, ArithmeticError):
    """The metric is degenerate (determinant factor vanishes or is negative)."""


class NumericError(HartogsError, ArithmeticError):
    """A numerical routine could not produce a trustworthy value."""


class SamplingError(HartogsError, RuntimeError):
    """Rejection sampling exhausted its attempt budget."""
