"""Exception types shared across the toolkit.

The hierarchy mirrors the failure classes callers are expected to handle
separately: bad call arguments, bad data values, bad run configuration,
and dataset ingestion problems.
"""


class ReconError(Exception):
    """Base class for all toolkit errors."""


class ParameterError(ReconError, ValueError):
    """An argument violates an operation's contract (shape, range, size)."""


class DataError(ReconError, ValueError):
    """Input data violates a value invariant (non-finite, bad labels, ...)."""


class ConfigError(ReconError, ValueError):
    """A run configuration is inconsistent or incomplete."""


class IngestionError(ReconError, ValueError):
    """A dataset directory is malformed or incomplete."""


class EmptySplitError(IngestionError):
    """A dataset split contains no items."""


class EmptyMaskError(DataError):
    """A segmentation mask has no foreground pixels; caller decides fallback."""


class UndefinedMetricError(ReconError, ValueError):
    """A metric is undefined for the given inputs (e.g. empty point sets)."""
