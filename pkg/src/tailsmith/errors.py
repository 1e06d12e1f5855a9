"""Exception types shared across the package."""


class TailsmithError(Exception):
    """Base class for all errors raised by tailsmith."""


class DomainError(TailsmithError, ValueError):
    """An argument lies outside the set where the quantity is defined."""


class PreconditionError(TailsmithError, ValueError):
    """A distribution fails a hypothesis a bound needs.

    ``hypothesis`` names the failed condition in plain words so the CLI can
    echo it back.
    """

    def __init__(self, message, hypothesis=None):
        super().__init__(message)
        self.hypothesis = hypothesis or message


class ApplicabilityError(PreconditionError):
    """The bound is defined but its threshold condition on ``a`` fails."""


class ParseError(TailsmithError, ValueError):
    """A distribution literal or CLI value could not be parsed."""
