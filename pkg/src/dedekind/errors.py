class DedekindError(ValueError):
    """Base class for every error raised by this package."""


class InvalidInput(DedekindError):
    """Malformed arguments: zero denominators, non-coprime pairs, bad moduli."""


class NotApplicable(DedekindError):
    """A formula was asked about a pair outside its hypotheses."""
