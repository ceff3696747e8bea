"""Exception types shared across the package.

Guard errors (resource refusals) carry ``guard = True`` so the CLI can map
them to a dedicated exit code, distinct from plain validation failures.
"""


class WccompError(Exception):
    """Base class for all package errors."""

    guard = False


class InvalidSpace(WccompError):
    """Sample-space parameters out of bounds or over the cell cap."""

    def __init__(self, message: str, guard: bool = False):
        super().__init__(message)
        self.guard = guard


class ParseError(WccompError):
    """Malformed support-set input."""


class EmptySupport(WccompError):
    """A support set must contain at least one cell."""


class DuplicatePoint(WccompError):
    """The same cell listed twice in a support-set description."""


class InvalidPoint(WccompError):
    """A point whose arity does not match the sample space."""


class InvalidSymbol(WccompError):
    """A coordinate value outside the alphabet."""


class IndexOutOfRange(WccompError):
    """An informant index outside 0..N-1."""


class UnsupportedFormat(WccompError):
    """Serialization format unavailable for this sample space."""


class InvalidPermutation(WccompError):
    """A relabeling that is not a bijection."""


class InvalidArgument(WccompError):
    """A scalar argument outside its documented domain."""


class InconsistentInput(WccompError):
    """Caller-supplied cost values that contradict the support set."""


class PointNotInSupport(WccompError):
    """Simulation asked for a point outside the strategy's support."""


class EnumerationTooLarge(WccompError):
    """Subset enumeration would exceed the configured guard."""

    guard = True


class StateSpaceTooLarge(WccompError):
    """The adaptive-question oracle exceeded its memo cap."""

    guard = True
