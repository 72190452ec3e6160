"""GitHub-compatible REST client.

Thin wrapper around `requests.Session`: link-header pagination, a bounded
fan-out when the server advertises the last page, and rate-limit handling
that honors the advertised reset time.
"""

from __future__ import annotations

import logging
import time
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any
from urllib.parse import parse_qs, urlparse

import requests

from ..errors import (
    AuthFailureError,
    ExecFailureError,
    NotFoundError,
    RateLimitedError,
)

logger = logging.getLogger(__name__)

DEFAULT_API_BASE_URL = "https://api.github.com"
GITHUB_API_VERSION = "2022-11-28"
TOKEN_ENV = "REPOECG_TOKEN"

PER_PAGE = 100


def _truncate(s: str, max_chars: int = 500) -> str:
    if len(s) <= max_chars:
        return s
    return s[: max_chars - 20] + "... [truncated]"


def _page_of(url: str) -> int | None:
    values = parse_qs(urlparse(url).query).get("page")
    if not values:
        return None
    try:
        return int(values[0])
    except ValueError:
        return None


def _rate_limit_wait_s(resp: requests.Response, now: float) -> float | None:
    """Seconds to wait before retrying, or None if this is not a rate limit."""

    if resp.status_code not in (403, 429):
        return None
    retry_after = resp.headers.get("Retry-After")
    if retry_after is not None:
        try:
            return max(0.0, float(retry_after))
        except ValueError:
            return 60.0
    if resp.headers.get("X-RateLimit-Remaining") == "0":
        reset = resp.headers.get("X-RateLimit-Reset")
        try:
            return max(0.0, float(reset or 0) - now) + 1.0
        except ValueError:
            return 60.0
    if resp.status_code == 429:
        return 60.0
    return None


@dataclass
class ApiClient:
    """Minimal REST client used for mining."""

    base_url: str = DEFAULT_API_BASE_URL
    token: str | None = None
    per_page: int = PER_PAGE
    concurrency: int = 4
    max_retries: int = 3
    timeout_s: float = 30.0
    sleep: Callable[[float], None] = time.sleep
    clock: Callable[[], float] = time.time
    session: requests.Session = field(default_factory=requests.Session)

    def __post_init__(self) -> None:
        self.base_url = self.base_url.rstrip("/")
        self.session.headers.update(
            {
                "Accept": "application/vnd.github+json",
                "X-GitHub-Api-Version": GITHUB_API_VERSION,
                "User-Agent": "repoecg",
            }
        )
        if self.token:
            self.session.headers["Authorization"] = f"Bearer {self.token}"

    def _url(self, endpoint: str) -> str:
        if endpoint.startswith(("http://", "https://")):
            return endpoint
        return f"{self.base_url}/{endpoint.lstrip('/')}"

    def _get(self, url: str, params: dict[str, Any] | None = None) -> requests.Response:
        attempts = 0
        while True:
            try:
                resp = self.session.get(url, params=params, timeout=self.timeout_s)
            except requests.RequestException as exc:
                raise ExecFailureError(f"request failed for {url}: {exc}") from exc

            wait_s = _rate_limit_wait_s(resp, self.clock())
            if wait_s is not None:
                if attempts >= self.max_retries:
                    raise RateLimitedError(
                        f"rate limited on {url} after {attempts} retries"
                    )
                attempts += 1
                logger.warning(
                    "rate limited (attempt %d/%d); sleeping %.0fs",
                    attempts,
                    self.max_retries,
                    wait_s,
                )
                self.sleep(wait_s)
                continue

            if resp.status_code == 401:
                raise AuthFailureError(
                    f"authentication failed for {url}; check {TOKEN_ENV}"
                )
            if resp.status_code == 404:
                raise NotFoundError(f"not found: {url}")
            if not resp.ok:
                raise ExecFailureError(
                    f"API error {resp.status_code} for {url}: {_truncate(resp.text)}"
                )
            return resp

    def _json(self, resp: requests.Response) -> Any:
        try:
            return resp.json()
        except ValueError as exc:
            raise ExecFailureError(f"invalid JSON from {resp.url}") from exc

    def get_json(self, endpoint: str) -> Any:
        return self._json(self._get(self._url(endpoint)))

    def _page_items(self, resp: requests.Response) -> list[dict[str, Any]]:
        data = self._json(resp)
        if not isinstance(data, list):
            raise ExecFailureError(f"expected a JSON list from {resp.url}")
        return [x for x in data if isinstance(x, dict)]

    def paginate(
        self, endpoint: str, params: dict[str, Any] | None = None
    ) -> list[dict[str, Any]]:
        """Fetch every page of a list endpoint, in page order."""

        url = self._url(endpoint)
        query: dict[str, Any] = dict(params or {})
        query["per_page"] = self.per_page

        first = self._get(url, query)
        items = self._page_items(first)

        last_url = first.links.get("last", {}).get("url")
        last_page = _page_of(last_url) if last_url else None
        if last_page is not None and last_page > 1:
            pages = list(range(2, last_page + 1))

            def fetch(page: int) -> list[dict[str, Any]]:
                return self._page_items(self._get(url, {**query, "page": page}))

            workers = max(1, min(self.concurrency, len(pages)))
            with ThreadPoolExecutor(max_workers=workers) as ex:
                for page_items in ex.map(fetch, pages):
                    items.extend(page_items)
            return items

        next_url = first.links.get("next", {}).get("url")
        while next_url:
            resp = self._get(next_url)
            items.extend(self._page_items(resp))
            next_url = resp.links.get("next", {}).get("url")
        return items

    def get_many(self, endpoints: list[str], *, missing_ok: bool = False) -> list[Any]:
        """Fetch several single-object endpoints with bounded concurrency.

        With `missing_ok`, a 404 yields None in that endpoint's slot.
        """

        if not endpoints:
            return []

        def fetch(endpoint: str) -> Any:
            try:
                return self.get_json(endpoint)
            except NotFoundError:
                if not missing_ok:
                    raise
                return None

        workers = max(1, min(self.concurrency, len(endpoints)))
        with ThreadPoolExecutor(max_workers=workers) as ex:
            return list(ex.map(fetch, endpoints))
