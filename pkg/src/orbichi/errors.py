"""Exception types shared across the package."""


class OrbichiError(Exception):
    """Base class for all errors raised by orbichi."""


class ValidationError(OrbichiError, ValueError):
    """A structure failed a group / action / homomorphism axiom check."""


class SpecError(OrbichiError, ValueError):
    """A textual or JSON spec could not be parsed."""


class BudgetExceeded(OrbichiError, RuntimeError):
    """An enumeration would exceed its configured budget or size cap."""
