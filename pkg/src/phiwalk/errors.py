"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Input violates a documented precondition or state invariant."""


class DimensionMismatchError(ValidationError):
    """Operands have incompatible dimensions."""


class ResourceLimitError(RuntimeError):
    """Requested computation exceeds a configured resource cap."""


class ConfigError(ValidationError):
    """Experiment configuration is missing, unreadable, or inconsistent."""
