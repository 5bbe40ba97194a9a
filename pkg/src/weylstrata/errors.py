"""Exception hierarchy shared by all modules."""


class WeylStrataError(Exception):
    """Base class for every error raised by the package."""


class ConfigurationError(WeylStrataError):
    """Unsupported type, rank or option."""


class ResourceError(WeylStrataError):
    """A configured cap (group order, rank) would be exceeded."""

    def __init__(self, message, predicted=None):
        super().__init__(message)
        self.predicted = predicted


class InvalidInputError(WeylStrataError, ValueError):
    """Malformed arguments to a combinatorial operation."""


class EmbeddingError(WeylStrataError):
    """A subgroup element could not be located in its parent group."""


class AlgorithmError(WeylStrataError):
    """An exact algorithm produced an inconsistent intermediate result."""


class IntegrityError(WeylStrataError):
    """A mathematical invariant that must hold was violated.

    ``details`` carries a JSON-serialisable description of the offending
    chain (groups, classes, characters) so reports can name it.
    """

    def __init__(self, message, details=None):
        super().__init__(message)
        self.details = details or {}
