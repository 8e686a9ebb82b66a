"""Exception hierarchy; the CLI maps each class to an exit code."""

from __future__ import annotations


class SpinSurgeryError(Exception):
    """Base class for all library errors."""

    exit_code = 3


class InvalidInputError(SpinSurgeryError, ValueError):
    """Malformed or out-of-contract input (wrong length, non-primitive class, ...)."""

    exit_code = 2


class ParseError(InvalidInputError):
    def __init__(self, message: str, position: int | None = None):
        super().__init__(message if position is None else f"{message} (at column {position})")
        self.position = position


class InconsistencyError(SpinSurgeryError):
    """An internal contract failed: odd parity, unsolvable sublink system, ..."""

    exit_code = 3


class VerificationError(SpinSurgeryError):
    exit_code = 1
