"""Exception types shared across the package."""


class DpsQkdError(Exception):
    """Base class for all package-specific errors."""


class InvalidDistributionError(DpsQkdError, ValueError):
    """A probability vector violates nonnegativity or normalization."""


class InvalidStateError(DpsQkdError, ValueError):
    """A density matrix violates hermiticity, trace or positivity bounds."""


class EigensolverError(DpsQkdError, RuntimeError):
    """Eigendecomposition failed or produced non-finite eigenvalues."""


class InconsistentStatisticsError(DpsQkdError, ValueError):
    """Estimated mutual information exceeds the distribution mean count."""


class DimensionBudgetError(DpsQkdError, ValueError):
    """Requested joint state exceeds the dimension budget for exact work."""


class ConfigError(DpsQkdError, ValueError):
    """A simulation configuration field is out of range or malformed."""
