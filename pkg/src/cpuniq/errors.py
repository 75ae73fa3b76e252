"""Exception types shared across the package."""


class CpUniqError(Exception):
    """Base class for all errors raised by cpuniq."""


class InvalidInput(CpUniqError, ValueError):
    pass


class DegenerateSpace(InvalidInput):
    pass


class NotOpen(InvalidInput):
    pass


class NotInvariant(InvalidInput):
    pass


class IdealNotInJX(InvalidInput):
    pass


class NotAQuiver(InvalidInput):
    pass


class InfiniteMultiplicity(InvalidInput):
    pass


class MultiplicityOverflow(CpUniqError, ArithmeticError):
    pass


class BudgetExceeded(CpUniqError, RuntimeError):
    pass


class InternalInconsistency(CpUniqError, AssertionError):
    """A theorem-level equivalence failed to hold. Always a bug signal."""
