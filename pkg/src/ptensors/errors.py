"""Exception hierarchy shared across the package."""


class PTensorsError(Exception):
    """Base class for all errors raised by this package."""


class ContractError(PTensorsError):
    """An operation was called with arguments violating its contract."""


class SizeCapError(PTensorsError):
    """A requested computation exceeds a configured size cap."""


class DisjointDomainsError(PTensorsError):
    """Overlap machinery was asked to relate two disjoint reference domains."""


class InternalConsistencyError(PTensorsError):
    """Two independent internal computations of the same quantity disagree.

    This is never expected; it indicates a bug, not bad input.
    """


class GraphParseError(PTensorsError):
    """Malformed graph or feature text. Carries the offending line number."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ConfigError(PTensorsError):
    """Invalid or non-composable model configuration."""


class IsolatedNeuronError(PTensorsError):
    """A layer output neuron received no overlapping input messages."""
