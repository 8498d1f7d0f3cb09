"""Exception types shared across the package.

The CLI maps these onto exit status 2 (input problems); an infeasible
solver outcome is a regular result, not an exception, and maps to exit 1.
"""


class PottsColorError(Exception):
    """Base class for all package errors."""


class InputError(PottsColorError, ValueError):
    """Invalid caller-supplied data (bad edge, mismatched lengths, ...)."""


class ParseError(InputError):
    """Malformed text input; carries a 1-based line or row number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DomainError(InputError):
    """Operation undefined for this input (e.g. density of a 1-node graph)."""


class SizeError(PottsColorError):
    """Exact enumeration refused: the state space exceeds the budget."""


class SearchExhausted(PottsColorError):
    """A color-count search ran out of budget without a feasible result.

    Carries the best (lowest-cost) coloring seen so the caller can still
    report it; the CLI maps this to exit status 1.
    """

    def __init__(self, message: str, best=None, energy: float | None = None):
        self.best = best
        self.energy = energy
        super().__init__(message)
