"""Exception types shared across the toolkit."""


class ValidationError(ValueError):
    """An input failed a domain invariant (bad distribution, matrix, box, ...)."""


class SingularEvaluationError(ArithmeticError):
    """A closed-form expression was evaluated where its denominator vanishes."""


class NoDataError(RuntimeError):
    """A sampling-based estimate has no qualifying samples to report."""


class VerificationError(AssertionError):
    """A numerical verification run found an invariant violation."""
