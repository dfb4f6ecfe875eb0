"""Exception types shared across the package."""


class ValidationError(ValueError):
    """An argument failed basic validation (non-finite, out of range, ...)."""


class InvariantViolation(ValueError):
    """A domain object violates one of its defining constraints."""
