"""Exception hierarchy shared by the library and the command line."""


class SatakeError(Exception):
    """Base class for all workbench errors."""


class UnsupportedDatumError(SatakeError, ValueError):
    """Root datum label outside the supported set."""


class WeightError(SatakeError, ValueError):
    """Malformed weight, wrong rank, or violated dominance precondition."""


class ResourceBudgetError(SatakeError):
    """A computation would exceed its configured size budget."""


class VerificationError(SatakeError):
    """An exact certificate failed; the mathematics claimed does not hold."""


class CacheError(SatakeError):
    """Cache file could not be used (e.g. unknown format version)."""
