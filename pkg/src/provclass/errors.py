"""Exception and warning types shared across the package."""


class ProvclassError(Exception):
    """Base class for all errors raised by this package."""


class SchemaError(ProvclassError):
    """Column names/kinds do not match the declared schema."""


class ParseError(ProvclassError):
    """A CSV cell or row could not be parsed; message carries row/column."""


class KindMismatchError(ProvclassError):
    """Operation applied to a column of the wrong kind."""


class MissingValuesError(ProvclassError):
    """Operation requires a fully imputed table but missing cells remain."""


class ValidationError(ProvclassError):
    """Structural input check failed (not a permutation, bad labels, ...)."""


class BoundsError(ValidationError):
    """Numeric argument outside its allowed range."""


class FitError(ProvclassError):
    """A statistic could not be learned from the training data."""


class ResampleError(ProvclassError):
    """Oversampling is impossible for this class distribution."""


class ConfigError(ProvclassError):
    """Invalid configuration: hyperparameters, scorer subsets, grids."""


class DomainError(ProvclassError):
    """Mathematical operation undefined for the given input."""


class UnsupportedError(ProvclassError):
    """Requested behaviour is outside what this toolkit supports."""


class ConvergenceWarning(UserWarning):
    """An iterative solver stopped at its iteration cap before tolerance."""
