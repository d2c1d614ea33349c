"""
Error hierarchy shared by all layers.

ValueError subclasses signal bad input (the CLI maps them to exit code 1);
RuntimeError subclasses signal failures discovered while running (exit code 2).
"""

from typing import Optional


class ConfigurationError(ValueError):
    """A configuration key could not be parsed or is unknown."""

    def __init__(self, key: str, message: str):
        self.key = key
        super().__init__(f"Config key '{key}': {message}")


class ValidationError(ValueError):
    """A parsed configuration (or model input) violates an invariant."""

    def __init__(self, message: str, key: Optional[str] = None):
        self.key = key
        prefix = f"Config key '{key}': " if key else ""
        super().__init__(f"{prefix}{message}")


class PolicyMismatchError(ValueError):
    """A stored policy was solved for a different model."""


class ImpossibleObservationError(RuntimeError):
    """An observation has zero probability under the belief and kernel."""


class SingularSystemError(RuntimeError):
    """A policy-evaluation linear system has no unique solution."""
