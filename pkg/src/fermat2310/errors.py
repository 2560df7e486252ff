"""Exception types shared across the package."""


class InvalidInput(ValueError):
    """Arguments violate an operation's preconditions."""


class IntegrityError(ArithmeticError):
    """An internal invariant was found broken (e.g. a reducible field modulus)."""


class SimpleRootViolation(InvalidInput):
    """Hensel lifting was seeded with a root that is not simple mod p."""


class CuspError(InvalidInput):
    """The point maps to a cusp (image at infinity)."""


class IndeterminateError(InvalidInput):
    """The question has no meaningful answer for this input (e.g. valuation of 0)."""


class DescentFailure(Exception):
    """A transported map failed the rationality check.

    ``witness`` carries the offending coefficient.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
