"""Exception taxonomy shared by all modules.

The CLI maps these onto exit codes: UsageError -> 2, NotFreeError and
other expected negative answers -> 1, InvariantViolation -> 3.
"""


class WidthlabError(Exception):
    """Base class for all package errors."""


class UsageError(WidthlabError):
    """Invalid parameters, unknown names, malformed files."""


class NotFreeError(WidthlabError):
    """A freeness precondition failed; carries the offending embedding."""

    def __init__(self, message, pattern=None, embedding=None):
        super().__init__(message)
        self.pattern = pattern
        self.embedding = embedding


class InvariantViolation(WidthlabError):
    """A structural guarantee did not hold on an accepted input.

    This is always either a bug or a falsified claim, never an expected
    outcome, so it gets its own exit code and loud reporting.
    """
