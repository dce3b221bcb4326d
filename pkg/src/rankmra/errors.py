"""Exception types shared across the package.

Each exception maps to a stable CLI exit code, so library errors surface as
predictable process statuses in batch pipelines.
"""


class RankMRAError(Exception):
    """Base class for all package errors."""

    exit_code = 1


class ParseError(RankMRAError):
    """Malformed textual input (rankings, coefficients, models, designs)."""

    exit_code = 2

    def __init__(self, message: str, line_no: int | None = None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


class DomainError(RankMRAError):
    """Arguments outside an operation's mathematical domain."""

    exit_code = 3


class ResourceLimitError(RankMRAError):
    """Request exceeds a configured size cap (factorial blow-up guard)."""

    exit_code = 4


class AuditFailure(RankMRAError):
    """A validation suite found a structural violation."""

    exit_code = 5
