"""Exception hierarchy shared across the package."""


class MenulightError(Exception):
    """Base class for all package-specific errors."""


class InvalidNutritionError(MenulightError, ValueError):
    """A nutrient value is negative or non-finite (corrupt ingested data)."""


class TableRejectedError(MenulightError):
    """No table on the page yields a usable column map (no item-name column)."""


class FetchError(MenulightError):
    """A page could not be fetched or decoded."""


class FatalIngestError(MenulightError):
    """The ingest root itself is unreachable; nothing can be crawled."""


class SeedFileError(MenulightError):
    """A seed file failed to parse. Carries the offending line number."""

    def __init__(self, line_number: int, message: str):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class NotFoundError(MenulightError):
    """Lookup of a restaurant that does not exist."""


class AuthenticationError(MenulightError):
    """Credential verification failed. Message is identical for unknown
    user and wrong credential so callers cannot tell the cases apart."""


class StorageError(MenulightError):
    """A write transaction failed and was rolled back."""
