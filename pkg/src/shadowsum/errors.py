"""Exception and warning types shared across the package."""


class DomainError(ValueError):
    """An argument is outside the valid range for the current root."""


class AdmissibilityError(ValueError):
    """A color triple or 6-tuple fails the admissibility conditions."""


class PhaseMixError(ArithmeticError):
    """Real and imaginary quantities were combined where a single
    quarter-turn phase is required (e.g. summing mixed-phase values,
    or a region holonomy factor that is not a power of sqrt(-1))."""


class SpecError(ValueError):
    """A gluing specification (k, l, matching) is malformed."""


class ConsistencyError(RuntimeError):
    """An internal invariant that should hold by construction failed.
    Raising this indicates an implementation bug, not bad input."""


class RangeError(ValueError):
    """A brute-force oracle was asked to run outside its safe range."""


class UndefinedGrowthError(ValueError):
    """Growth rate requested for an exactly zero value."""


class CancellationWarning(RuntimeWarning):
    """An alternating sum cancelled below the diagnostic threshold;
    the returned value may carry fewer significant digits."""
