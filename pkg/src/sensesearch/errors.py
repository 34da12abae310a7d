"""Exception types shared across the pipeline."""


class SenseSearchError(Exception):
    """Base class for every error this package raises deliberately."""


class DictionaryLoadError(SenseSearchError):
    """The sense inventory file could not be read."""


class EmptyInventoryError(DictionaryLoadError):
    """The sense inventory file contained no valid entries."""


class UrlNormalizationError(SenseSearchError):
    """The input could not be normalized into an absolute URL."""


class PayloadParseError(SenseSearchError):
    """A provider payload was structurally invalid for its declared kind."""

    def __init__(self, message: str, *, location: str = ""):
        super().__init__(message)
        self.location = location


class CorpusError(SenseSearchError):
    """The corpus file could not be read or decoded."""


class IndexingError(SenseSearchError):
    """The document set could not be indexed (e.g. duplicate ids)."""


class EmptyResultsError(SenseSearchError):
    """No provider page with status ok was available to aggregate."""


class AllProvidersFailedError(EmptyResultsError):
    """Every provider failed for every cluster query of a search request."""

    def __init__(self, message: str, provider_status: list | None = None):
        super().__init__(message)
        self.provider_status = provider_status or []


class ConfigError(SenseSearchError):
    """The runtime configuration is unusable."""


class PersistenceError(SenseSearchError):
    """A write to a backing store failed."""
