"""Exception hierarchy shared by every solver and the file readers."""

from __future__ import annotations


class AdspaceError(Exception):
    """Base class for all errors raised by this package."""


class ClassViolation(AdspaceError, ValueError):
    """An ad was handed to a solver that only accepts another size class."""


class UnknownAd(AdspaceError, KeyError):
    def __init__(self, ad_id):
        super().__init__(ad_id)
        self.ad_id = ad_id

    def __str__(self):
        return f"unknown ad id {self.ad_id!r}"


class BudgetExceeded(AdspaceError):
    """An enumeration or search ran past its configured work budget.

    Raised instead of returning a truncated answer, so callers can never
    mistake a partial search for a certified one.
    """


class OverflowGuard(BudgetExceeded):
    """2^(2^K) is beyond the work budget; K is too large for the PTAS."""


class InternalError(AdspaceError, AssertionError):
    """A state the algorithms guarantee impossible was reached."""


class ParseError(AdspaceError, ValueError):
    def __init__(self, line, column, message):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.message = message


class ValidationError(AdspaceError, ValueError):
    def __init__(self, ad_id, constraint, detail=""):
        msg = f"ad {ad_id}: violates {constraint}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)
        self.ad_id = ad_id
        self.constraint = constraint
