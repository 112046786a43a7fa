"""Exception types shared across the package."""


class ConfigurationError(ValueError):
    """A scenario, source list or algorithm spec is inconsistent."""


class SingularityError(ArithmeticError):
    """A normalizing denominator or covariance is numerically singular."""
