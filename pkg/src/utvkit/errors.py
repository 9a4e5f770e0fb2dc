"""Exception types shared across the kit."""


class DimensionError(ValueError):
    """Matrix dimensions are invalid or incompatible for the operation."""


class ConvergenceError(RuntimeError):
    """An iterative kernel failed to converge within its sweep limit."""


class ConsistencyError(RuntimeError):
    """A numerical-consistency check failed (e.g. negative residual mass)."""
