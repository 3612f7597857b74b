"""Error hierarchy shared by the services, the CLI and the API.

Every error raised on purpose by this package derives from
:class:`PolyBernoulliError`.  The concrete classes also derive from the
builtin exception that best describes them so that callers catching
``ValueError`` / ``RuntimeError`` keep working.
"""

from __future__ import annotations


class PolyBernoulliError(Exception):
    """Base class for all polybern errors."""


class DomainError(PolyBernoulliError, ValueError):
    """Arguments outside the supported index range (negative counts etc.)."""


class UnsupportedMethodError(PolyBernoulliError, ValueError):
    """A (sequence, method) pair that is rejected; the message says why."""

    def __init__(self, seq: str, method: str, reason: str):
        self.seq = seq
        self.method = method
        self.reason = reason
        super().__init__(f"method '{method}' is not supported for {seq}: {reason}")


class PreconditionError(PolyBernoulliError, ValueError):
    """Input outside the stated domain of a map or algorithm."""


class BudgetExceededError(PolyBernoulliError, RuntimeError):
    """An exhaustive search was refused or aborted by its budget."""

    def __init__(self, what: str, limit: int, requested: int | None = None):
        self.what = what
        self.limit = limit
        self.requested = requested
        detail = f" (requested {requested})" if requested is not None else ""
        super().__init__(f"{what} exceeds budget {limit}{detail}")


class BFileParseError(PolyBernoulliError, ValueError):
    """Malformed b-file line."""

    def __init__(self, line_number: int, line: str):
        self.line_number = line_number
        self.line = line
        super().__init__(f"malformed b-file line {line_number}: {line!r}")


class SequenceUnavailableError(PolyBernoulliError, LookupError):
    """No network access and nothing cached for the requested A-number."""
