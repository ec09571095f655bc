"""Shared exception types."""


class ResourceLimitError(RuntimeError):
    """An enumeration or sweep exceeded its desk-scale cap."""
