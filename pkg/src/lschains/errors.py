"""Error taxonomy shared across the package.

InputError covers malformed or out-of-domain arguments (CLI exit code 1).
InvariantViolation covers broken internal guarantees such as a non-integral
chain endpoint or a weight map leaving the lattice (CLI exit code 2).
"""

from __future__ import annotations

__all__ = ["InputError", "InvariantViolation"]


class InputError(ValueError):
    """Bad user-supplied input: unknown type label, non-dominant weight, etc."""


class InvariantViolation(RuntimeError):
    """A runtime integrality or consistency guarantee failed."""
