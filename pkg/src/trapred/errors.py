"""Exception hierarchy shared by all trapred modules."""

from __future__ import annotations


class TrapredError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(TrapredError, ValueError):
    """An argument lies outside the range where an operation is defined."""


class BudgetExceededError(TrapredError):
    """An exponential routine would exceed its configured work budget."""


class AlistError(TrapredError, ValueError):
    """Malformed alist or dense matrix text.

    ``kind`` is one of ``"malformed-header"``, ``"index-out-of-range"``,
    ``"degree-mismatch"`` or ``"malformed-row"``; ``line`` is 1-based.
    """

    def __init__(self, kind: str, line: int, detail: str = "") -> None:
        self.kind = kind
        self.line = line
        msg = f"{kind} at line {line}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class CapExceededError(TrapredError):
    """Repair loop appended more rows than allowed; carries the partial matrix."""

    def __init__(self, message: str, matrix) -> None:
        super().__init__(message)
        self.matrix = matrix


class AttemptsExhaustedError(TrapredError):
    """A Las Vegas construction ran out of attempts."""


class NotFoundError(TrapredError):
    """Exhaustive search found no qualifying matrix within the row limit."""


class UnknownCodeError(TrapredError, KeyError):
    """Requested catalog name does not exist."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown code"
