"""Exception hierarchy shared by every a1lab module."""


class A1LabError(Exception):
    """Base class for all library errors."""


class InputError(A1LabError, ValueError):
    """Malformed or inconsistent input (wrong arity, bad degrees, bad literal)."""


class PreconditionError(A1LabError, ValueError):
    """An operation was called outside its precondition (e.g. a point not on X)."""


class UnsupportedError(A1LabError):
    """Valid input that this toolkit deliberately does not handle."""


class ReductionError(A1LabError, ValueError):
    """A rational coefficient cannot be reduced modulo the target characteristic."""


class ConsistencyError(A1LabError, AssertionError):
    """An internal identity failed; indicates a bug, never bad input."""


class TooLargeError(A1LabError):
    """Exhaustive enumeration would exceed the hard point cap."""


class GenerationError(A1LabError):
    """Random generation exhausted its retry budget."""


class DegenerateInputError(A1LabError, ValueError):
    """Input points are special (non-general) even after the retry cap."""


class ConstructionError(A1LabError, ValueError):
    """A derived object cannot be built, e.g. a cover in bad characteristic."""
