"""Exception and warning types shared across the package."""


class BudgetExceeded(RuntimeError):
    """A computation would exceed its configured cell or node budget."""


class HypothesisError(ValueError):
    """An operation that needs a theorem hypothesis was called without it."""


class HypothesisNotMet(UserWarning):
    """A theorem-conditioned result was evaluated on an input outside its hypothesis."""


class TheoremViolation(AssertionError):
    """A proved identity failed on an input meeting its hypothesis; this is a bug."""
