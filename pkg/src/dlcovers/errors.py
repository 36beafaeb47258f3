"""Exception hierarchy shared by the library and the CLI exit-code mapping."""


class DlcoversError(Exception):
    """Base class for all library errors."""


class DomainError(DlcoversError, ValueError):
    """A mathematically undefined request (inverse of zero, gcd > 1, ...)."""


class UsageError(DlcoversError, ValueError):
    """Operands or arguments that do not fit together (mixed fields, bad chunk)."""


class PreconditionError(DlcoversError, ValueError):
    """Inputs outside an operation's stated preconditions."""


class UnsupportedError(DlcoversError, NotImplementedError):
    """The requested family or size is not covered by this tool."""


class GuardRailError(DlcoversError, RuntimeError):
    """Refused because the enumeration would exceed the desk-scale limit."""


class ConsistencyError(DlcoversError, AssertionError):
    """An internal cross-check failed (for example a Moebius sum not divisible by r)."""
