"""Exception types shared across the workbench.

Every failure mode that callers are expected to catch gets its own class;
plain ``ValueError`` is reserved for programming errors.
"""


class TamefiberError(Exception):
    """Base class for all workbench errors."""


class NonUnitError(TamefiberError):
    """An element (or matrix) that must be invertible is not."""


class CoprimalityError(TamefiberError):
    """Residue factors / block characteristic polynomials are not coprime."""


class PreconditionError(TamefiberError):
    """A stated operation precondition is violated (shape, relation, roots)."""


class BudgetError(TamefiberError):
    """An enumeration would exceed the configured budget."""


class ExhaustionError(TamefiberError):
    """A deterministic search ran out of candidates; enlarge the field."""


class GeneralPositionError(TamefiberError):
    """A character expected to be in general position is not."""
