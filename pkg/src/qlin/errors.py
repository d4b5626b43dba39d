"""Exception types shared across the package.

The CLI maps these onto its exit-code contract: usage/parse errors exit 2,
guard violations exit 3, failed verifications exit 1.
"""


class QlinError(Exception):
    """Base class for all package errors."""


class FieldMismatchError(QlinError):
    """Operands belong to different fields (or to incompatible towers)."""


class PoleError(QlinError):
    """A rational function was evaluated at a zero of its denominator."""


class RamifiedSpecializationError(QlinError):
    """A specialization produced repeated roots; Dedekind reading refused."""


class GuardExceededError(QlinError):
    """A resource guard tripped (field size, enumeration bound, t-degree)."""


class ParseError(QlinError):
    """Polynomial text rejected; carries the byte offset of the failure."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset
