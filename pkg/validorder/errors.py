"""Exceptions raised by validorder.

Input problems derive from `ValueError`, resource and search outcomes from
`RuntimeError`. `InvariantError` marks a broken internal guarantee and is
never caught inside the package.
"""


class ValidOrderError(Exception):
    pass


class GroupError(ValidOrderError, ValueError):
    """Bad group description, element, or operand mismatch."""


class ParseError(GroupError):
    """Malformed textual group, element or set."""


class MalformedOrderingError(ValidOrderError, ValueError):
    """Ordering or input set contains a zero or a repeated element."""


class SequencerUnavailableError(ValidOrderError, ValueError):
    pass


class GuardExceededError(ValidOrderError, RuntimeError):
    """A resource guard was exceeded without `force`."""


class NoValidOrderingError(ValidOrderError, RuntimeError):
    """Every available method failed to produce a valid ordering."""

    def __init__(self, message, elements=None):
        super().__init__(message)
        self.elements = elements


class InvariantError(ValidOrderError, AssertionError):
    pass
