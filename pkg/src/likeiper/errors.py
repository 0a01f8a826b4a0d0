"""Exception hierarchy shared by all likeiper modules.

The CLI maps these onto process exit codes (see cli.main): UsageError -> 2,
PrecisionError -> 3, CacheError -> 1.  DomainError signals a mathematically
invalid input to a kernel routine (e.g. log of a series with constant term
other than 1) and also exits 2 when it escapes to the CLI.
"""


class LikeiperError(Exception):
    """Base class for all package errors."""


class UsageError(LikeiperError):
    """Invalid argument or configuration supplied by the caller."""


class DomainError(LikeiperError):
    """Input outside the mathematical domain of the operation."""


class PrecisionError(LikeiperError):
    """The requested computation cannot be delivered at the requested
    precision.  The message always names the violated constraint and,
    where possible, the setting that would satisfy it."""


class CacheError(LikeiperError):
    """The on-disk constant cache is unreadable, tampered with, or
    structurally invalid."""
