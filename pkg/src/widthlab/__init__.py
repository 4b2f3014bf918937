"""widthlab: branch-decomposition widths, certified constructions,
forbidden-pattern verification, and the packing/colouring solver pipeline."""

from .errors import InvariantViolation, NotFreeError, UsageError, WidthlabError

__all__ = ["InvariantViolation", "NotFreeError", "UsageError", "WidthlabError"]

__version__ = "0.1.0"
