"""Shared exception types."""


class ParseError(ValueError):
    """Malformed textual input: a Pauli string, partition, or operator file."""


class CapExceeded(RuntimeError):
    """An input is larger than the configured size cap for an exact routine."""
