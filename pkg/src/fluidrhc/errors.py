"""Exception types shared across the package."""


class FluidRhcError(Exception):
    """Base class for all package-specific errors."""


class ConfigError(FluidRhcError):
    """A scenario or problem definition is malformed or inconsistent."""


class NumericalError(FluidRhcError):
    """A numerical operation produced non-finite or unusable results."""


class ConditioningError(NumericalError):
    """A linear system is too ill-conditioned to solve reliably."""
