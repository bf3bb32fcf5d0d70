"""Exception hierarchy shared across the package."""


class QglabError(Exception):
    """Base class for all package errors."""


class ConfigurationError(QglabError, ValueError):
    """Invalid model spec, parameter, or experiment configuration."""


class AlphabetError(QglabError, ValueError):
    """A letter or word does not belong to the expected alphabet."""


class DistanceNotCertifiedError(QglabError, RuntimeError):
    """A distance query left the regime where exactness is guaranteed.

    Raised instead of returning a possibly-wrong number.
    """


class ResourceBudgetError(QglabError, RuntimeError):
    """A construction would exceed its configured resource budget."""


class PreconditionError(QglabError, ValueError):
    """An operation's documented input contract is violated."""


class ScaleGapError(PreconditionError):
    """Two witness scales are too close to separate."""


class VerificationError(QglabError, RuntimeError):
    """A certificate or witness failed re-verification."""
