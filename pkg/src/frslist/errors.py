class ParameterError(ValueError):
    """Invalid input parameters (CLI exit code 1)."""


class BudgetExceeded(ParameterError):
    """An exhaustive enumeration was refused because it exceeds its budget."""


class InvariantViolation(RuntimeError):
    """A theorem-level guarantee failed at runtime (CLI exit code 2).

    Raised only when something that is provably impossible happens, so it
    always indicates a bug.
    """
