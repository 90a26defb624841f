"""Exception hierarchy shared by the whole toolkit.

The CLI maps these onto exit codes: ExprSyntaxError -> 2,
DomainError (and subclasses) -> 3, BudgetExceededError -> 4.
"""


class OrekitError(Exception):
    """Base class for all toolkit errors."""


class ExprSyntaxError(OrekitError):
    """Malformed polynomial / element literal. Carries the offending position."""

    def __init__(self, message, pos=None):
        if pos is not None:
            message = f"{message} (at position {pos})"
        super().__init__(message)
        self.pos = pos


class DomainError(OrekitError):
    """Input outside an operation's mathematical domain."""


class TowerMismatchError(DomainError):
    """Operands live in structurally different fields or towers."""


class ZeroDivisorError(DomainError):
    """Division by zero (field element or polynomial)."""


class ZeroConstantTermError(DomainError):
    """Operation requires an etale phi-module (nonzero constant coefficient)."""


class NotMonicError(DomainError):
    """Operation requires a monic polynomial."""


class BudgetExceededError(OrekitError):
    """Requested enumeration or field construction exceeds the configured budget."""
