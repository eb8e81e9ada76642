"""Exception types shared across the toolkit."""


class HgaError(Exception):
    """Base class for all toolkit errors."""


class MapFormatError(HgaError):
    """A confusable-map file is malformed or violates a map invariant."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"{message} at line {line}"
        super().__init__(message)


class CorpusFormatError(HgaError):
    """A corpus file is malformed or uses labels outside the allowed set."""


class SplitError(HgaError):
    """A requested train/val/test split is infeasible or misconfigured."""


class TrainingError(HgaError):
    """The baseline classifier cannot be trained on the given corpus."""


class MetricsError(HgaError):
    """Metric computation was asked for an undefined quantity."""


class AdapterProtocolError(HgaError):
    """An external model adapter violated the line protocol."""
