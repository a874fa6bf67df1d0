"""Exception types shared across the package.

Every error carries a short machine-readable ``code`` (e.g. ``"outside-ball"``)
so the CLI and the tests can match on it without parsing messages.
"""


class CubicPeriodsError(Exception):
    code = "error"

    def __init__(self, code: str | None = None, message: str | None = None):
        if code is not None:
            self.code = code
        super().__init__(message or self.code)


class ContractViolation(CubicPeriodsError, ValueError):
    """A documented precondition was not met by the caller."""

    code = "contract-violation"


class DomainError(CubicPeriodsError, ValueError):
    """Input is well formed but outside the domain of the operation."""

    code = "domain-error"


class PrecisionExhausted(CubicPeriodsError, ArithmeticError):
    code = "precision-exhausted"

    def __init__(self, message: str | None = None):
        super().__init__("precision-exhausted", message)
