"""Error types shared across the package.

Every user-facing failure is a MunuError; the CLI maps them to exit
code 2 and the service maps them to 4xx responses.
"""

from __future__ import annotations


class MunuError(Exception):
    """Base class for all expected failures."""

    def diagnostic(self) -> str:
        return str(self)


class DslError(MunuError):
    """Malformed source text. Carries a 1-based line and column."""

    def __init__(self, message: str, line: int = 1, col: int = 1):
        super().__init__(message)
        self.line = line
        self.col = col

    def diagnostic(self) -> str:
        return f"line {self.line}, col {self.col}: {super().__str__()}"


class OrderError(MunuError):
    """A poset/lattice axiom or construction rule was violated."""


class PreconditionError(MunuError):
    """An operation was applied outside its stated preconditions."""


class GuardExceeded(MunuError):
    """A size or depth guard tripped before the computation ran away."""
