"""Exception hierarchy shared by every module and mapped to CLI exit codes."""


class BcxError(Exception):
    """Base class for all library errors."""

    exit_code = 1


class InvalidInput(BcxError, ValueError):
    """Input failed validation (bad labels, non-simple matroid, malformed file)."""

    exit_code = 2


class BudgetExhausted(BcxError):
    """A search ran out of budget before reaching a verdict."""

    exit_code = 3


class CapExceeded(BudgetExhausted):
    """Input is larger than an enumeration cap allows."""


class InvariantViolation(BcxError, AssertionError):
    """Two independent routes disagreed, or a proven identity failed."""

    exit_code = 1
