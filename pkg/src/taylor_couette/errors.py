"""Exception types raised by the package."""


class ConfigurationError(ValueError):
    """Invalid flow specification, annulus or run configuration."""


class DomainError(ValueError):
    """A point or radius lies outside the region where an operation is defined."""


class ConsistencyError(RuntimeError):
    """Two independent evaluation routes disagreed beyond tolerance."""


class ConvergenceError(RuntimeError):
    """An iterative or quadrature procedure did not reach its tolerance."""


class SolverError(RuntimeError):
    """A linear-algebra kernel failed (singular system, SVD non-convergence)."""
