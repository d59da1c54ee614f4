"""Exception types shared across the package."""


class SpinvolError(Exception):
    """Base class for all package-specific errors."""


class DomainError(SpinvolError, ValueError):
    """Raised for inputs outside an operation's domain (bad parity, empty
    coupling range, out-of-range lattice point).  Selection-rule zeros are
    values, not errors, and never raise this."""


class NumericError(SpinvolError, RuntimeError):
    """Raised when an iterative numeric procedure fails to converge."""

    def __init__(self, message: str, diagnostics: dict | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class StructuralError(SpinvolError, RuntimeError):
    """Raised when a matrix fails a structural guarantee (for example
    off-tridiagonal leakage), which signals a phase-convention bug."""
