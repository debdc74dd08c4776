"""Shared exception types.

Validation problems (bad shapes, bad parameters, bad files) raise
``ValueError`` subclasses so callers can catch one family; failures that
occur mid-run (non-finite losses or gradients) are ``RuntimeError``
subclasses.
"""


class DimensionError(ValueError):
    """Tensor arguments disagree on a dimension; message names the axis."""


class ParameterError(ValueError):
    """A numeric knob is outside its documented range."""


class ContractError(ValueError):
    """An operation was called in a way its contract forbids."""


class InputError(ValueError):
    """An input file or record is malformed; message carries the location."""


class ConfigurationError(ValueError):
    """A configuration is internally inconsistent."""


class UndefinedCorrelationError(ValueError):
    """Correlation requested on a zero-variance series."""


class InsufficientDataError(ValueError):
    """Not enough observations for the requested statistic."""


class TrainingError(RuntimeError):
    """Training produced a non-finite loss or gradient."""
