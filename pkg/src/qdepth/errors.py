"""Shared exception types.

SchemaError marks malformed external input (JSON shape, string encodings),
DomainError marks structurally valid input outside an operation's domain.
The command-line front end maps them to distinct exit codes.
"""


class SchemaError(ValueError):
    """External input does not match the documented JSON schema."""


class DomainError(ValueError):
    """Input is outside the mathematical domain of the operation."""
