"""Shared exception types."""


class DomainError(ValueError):
    """An operation was called outside its stated precondition."""


class NonPrimitiveError(DomainError):
    """A primitive-triple operation received a non-primitive triple.

    Carries the least common prime so callers can reduce by it.
    """

    def __init__(self, message, common_prime):
        super().__init__(message)
        self.common_prime = common_prime
