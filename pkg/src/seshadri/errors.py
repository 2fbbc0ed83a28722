"""Exception types shared across the package."""

from __future__ import annotations


class SeshadriError(Exception):
    """Base class for all package errors."""


class InputError(SeshadriError):
    """Malformed user input (bad file, bad schema, bad argument)."""


class DomainError(SeshadriError):
    """Well-formed input that violates a mathematical precondition."""
