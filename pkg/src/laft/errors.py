"""Exception hierarchy.

Domain errors (subclasses of :class:`DomainError`) are the ones the CLI maps
to exit status 2; their class name is the stable error name printed on stderr.
"""


class LaftError(Exception):
    """Base class for every error raised by this package."""


class DomainError(LaftError):
    """A mathematically meaningful refusal (wrong slope, zero class, ...)."""


class RootUnavailable(DomainError):
    """The coefficient backend cannot take the requested root."""


class IndeterminateOrder(DomainError):
    pass


class VariableMismatch(DomainError):
    pass


class ZeroDivisor(DomainError):
    pass


class ZeroLeadingExponent(DomainError):
    pass


class InsufficientPrecision(DomainError):
    pass


class SlopeViolation(DomainError):
    pass


class ZeroClass(DomainError):
    pass


class NotIrreducible(DomainError):
    pass


class WrongPoint(DomainError):
    pass


class HypothesisViolated(DomainError):
    pass


class NotUnitLeading(DomainError):
    pass


class ExprSyntaxError(LaftError):
    """Parse failure; ``offset`` is the byte offset of the offending token."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class ExponentNotRational(ExprSyntaxError):
    pass
