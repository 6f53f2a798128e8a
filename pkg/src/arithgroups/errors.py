"""Domain errors shared across modules.

Every error carries a stable name (its class name) which the CLI serializes
verbatim, so renaming a class here is a wire-format change.
"""


class DomainError(Exception):
    """Base class for all domain-level failures."""

    @property
    def name(self):
        return type(self).__name__


class NotInvertible(DomainError):
    pass


class NonSquarefree(DomainError):
    pass


class DivisionByZero(DomainError, ZeroDivisionError):
    pass


class ReducibleMinPoly(DomainError):
    pass


class Unverified(DomainError):
    pass


class NotUnit(DomainError):
    pass


class PrecisionMismatch(DomainError):
    pass


class SingularRoot(DomainError):
    pass


class SingularForm(DomainError):
    pass


class BracketNotClosed(DomainError):
    pass


class NotStabilizing(DomainError):
    pass


class BadReduction(DomainError):
    pass


class NonInvertibleDenominator(DomainError):
    def __init__(self, prime, message=None):
        self.prime = prime
        super().__init__(message or f"denominator not invertible: prime {prime} divides the modulus")


class Truncated(DomainError):
    pass
