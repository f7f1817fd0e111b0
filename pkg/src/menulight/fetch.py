"""Page-fetch capability, injected into ingest.

Two implementations: local files (hermetic corpus tests, file-based
repositories) and HTTP. Both raise FetchError so ingest can record a
per-page failure and keep going.
"""

from __future__ import annotations

from pathlib import Path
from typing import Protocol
from urllib.parse import urlparse

import httpx

from .errors import FetchError


class Fetcher(Protocol):
    def fetch(self, locator: str) -> str:
        """Return the HTML text behind `locator`, or raise FetchError."""
        ...


class FileFetcher:
    """Reads pages from the filesystem; locators are plain paths."""

    def fetch(self, locator: str) -> str:
        path = Path(locator)
        try:
            return path.read_text(encoding="utf-8")
        except OSError as exc:
            raise FetchError(f"cannot read {locator}: {exc.strerror or exc}") from exc
        except UnicodeDecodeError as exc:
            raise FetchError(f"cannot decode {locator}: {exc}") from exc


class HttpFetcher:
    """Fetches pages over HTTP(S) with a shared client and timeout."""

    def __init__(self, timeout_seconds: float = 10.0):
        self._client = httpx.Client(timeout=timeout_seconds, follow_redirects=True)

    def fetch(self, locator: str) -> str:
        try:
            response = self._client.get(locator)
        except httpx.HTTPError as exc:
            raise FetchError(f"request to {locator} failed: {exc}") from exc
        if response.status_code >= 400:
            raise FetchError(f"{locator} returned HTTP {response.status_code}")
        return response.text

    def close(self):
        self._client.close()


def fetcher_for(root_locator: str) -> Fetcher:
    """Pick the fetcher matching the root's scheme (http/https vs path)."""
    scheme = urlparse(root_locator).scheme
    if scheme in ("http", "https"):
        return HttpFetcher()
    return FileFetcher()
