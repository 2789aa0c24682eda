"""
Exception hierarchy for flatcomp.

Every error raised on purpose by the services derives from FlatcompError so
that the CLI and the HTTP routes can map it to an exit code or a status.
"""

from typing import Optional


class FlatcompError(Exception):
    """Base class for all flatcomp errors"""


class BaseMismatchError(FlatcompError, ValueError):
    """Values or spaces over different base quantales were combined"""


class SpaceMismatchError(FlatcompError, ValueError):
    """A module, filter, map or table does not live on the expected space"""


class UnknownPointError(FlatcompError, KeyError):
    """A point name is not part of the space"""

    def __init__(self, point: str, space: str):
        super().__init__(f"unknown point '{point}' in space '{space}'")
        self.point = point
        self.space = space

    def __str__(self) -> str:
        return self.args[0]


class InvalidModuleError(FlatcompError, ValueError):
    """A value table violates the module inequality"""


class PreconditionError(FlatcompError, ValueError):
    """An operation was called outside of its stated precondition"""


class BudgetExceededError(FlatcompError):
    """An enumeration would go past the configured budget"""

    def __init__(self, what: str, budget: int):
        super().__init__(f"budget exceeded while enumerating {what} (budget={budget})")
        self.what = what
        self.budget = budget


class ParseError(FlatcompError, ValueError):
    """Text input could not be parsed"""

    def __init__(self, message: str, line: Optional[int] = None):
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(f"{prefix}{message}")
        self.line = line
