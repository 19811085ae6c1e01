"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input is outside the domain an operation is defined on."""


class ResourceError(RuntimeError):
    """A request exceeds the explicit size limits of a simulator."""


class SolverError(RuntimeError):
    """The LP solver stalled or failed numerically."""

    def __init__(self, message, iterations=None, pivot_tol=None):
        if iterations is not None:
            message = f"{message} (iterations={iterations}, pivot_tol={pivot_tol})"
        super().__init__(message)
        self.iterations = iterations
        self.pivot_tol = pivot_tol


class CertificateConstructionError(DomainError):
    """Certificate construction failed; carries the largest budget it can prove."""

    def __init__(self, message, largest_provable_n=None):
        if largest_provable_n is not None:
            message = f"{message} (largest provable N = {largest_provable_n})"
        super().__init__(message)
        self.largest_provable_n = largest_provable_n
