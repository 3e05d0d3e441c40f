"""Exception hierarchy.

Validation problems with user input derive from :class:`InputError`;
the CLI maps those to exit code 1 and :class:`InternalConsistencyError`
to exit code 2.
"""


class PBrauerError(Exception):
    pass


class InputError(PBrauerError, ValueError):
    pass


class InvalidArgument(InputError):
    pass


class IntegralityViolation(InputError):
    """A slope segment ends at a non-lattice point."""


class PreconditionError(InputError):
    pass


class InconsistencyError(InputError):
    """Input data leads to a value that cannot occur (negative or fractional counts)."""


class UnsupportedInput(InputError):
    pass


class ClassificationError(InputError):
    pass


class ResourceError(PBrauerError):
    pass


class InternalConsistencyError(PBrauerError):
    """Two independent computations of the same quantity disagree."""
