"""Shared exception types."""


class DomainError(ValueError):
    """A parameter or argument lies outside the mathematical domain."""
