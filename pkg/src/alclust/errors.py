"""Exception types and warning categories shared across the package."""


class AlclustError(Exception):
    """Base class for every error this package raises deliberately."""

    exit_code = 1


class InputError(AlclustError):
    """Malformed user input: files, flags, shapes, or parameter ranges."""

    exit_code = 2


class DegenerateSeriesError(InputError):
    """A series has zero variance, so its correlations are undefined."""


class ConstraintViolationError(AlclustError):
    """Cluster statistics fell outside the valid domain of the likelihood."""

    exit_code = 3


class UndefinedCouplingError(ConstraintViolationError):
    """Coupling was requested for a singleton, where it is undefined."""


class InternalError(AlclustError):
    """An internal bookkeeping invariant broke; indicates a bug."""

    exit_code = 4


class ClampWarning(UserWarning):
    """A correlation sum sat at its strict upper bound and was clamped.

    Emitted when a cluster's internal correlation sum reaches size**2
    (perfectly correlated or duplicated members).  The likelihood there
    diverges, so it is evaluated just inside the bound instead.
    """
