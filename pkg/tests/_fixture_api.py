"""Local GitHub-shaped REST server for mining tests."""

from __future__ import annotations

import json
import math
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from typing import Any
from urllib.parse import parse_qs, urlencode, urlparse


class FixtureApi:
    """Serve `routes` (path without leading slash -> JSON) on 127.0.0.1.

    List routes are paginated with `per_page` / `page` and advertise
    `rel="next"` and `rel="last"` links like the real API.
    """

    def __init__(
        self,
        routes: dict[str, Any],
        *,
        token: str | None = None,
        advertise_last: bool = True,
    ) -> None:
        self.routes = routes
        self.token = token
        self.advertise_last = advertise_last
        self.requests: list[str] = []
        self._lock = threading.Lock()
        self._server: ThreadingHTTPServer | None = None
        self._thread: threading.Thread | None = None

    @property
    def base_url(self) -> str:
        assert self._server is not None
        host, port = self._server.server_address[:2]
        return f"http://{host!s}:{port}"

    def __enter__(self) -> FixtureApi:
        api = self

        class Handler(BaseHTTPRequestHandler):
            def log_message(self, format: str, *args: object) -> None:  # noqa: A002
                return

            def _send(self, status: int, payload: object, headers: dict[str, str] | None = None) -> None:
                body = json.dumps(payload).encode("utf-8")
                self.send_response(status)
                self.send_header("Content-Type", "application/json")
                self.send_header("Content-Length", str(len(body)))
                for k, v in (headers or {}).items():
                    self.send_header(k, v)
                self.end_headers()
                self.wfile.write(body)

            def do_GET(self) -> None:  # noqa: N802
                parsed = urlparse(self.path)
                path = parsed.path.lstrip("/")
                query = {k: v[0] for k, v in parse_qs(parsed.query).items()}
                with api._lock:
                    api.requests.append(path)

                if api.token is not None:
                    if self.headers.get("Authorization") != f"Bearer {api.token}":
                        self._send(401, {"message": "Bad credentials"})
                        return

                if path not in api.routes:
                    self._send(404, {"message": "Not Found"})
                    return
                data = api.routes[path]
                if not isinstance(data, list):
                    self._send(200, data)
                    return

                per_page = int(query.get("per_page", "30"))
                page = int(query.get("page", "1"))
                last = max(1, math.ceil(len(data) / per_page))
                chunk = data[(page - 1) * per_page : page * per_page]

                def page_url(n: int) -> str:
                    return f"{api.base_url}/{path}?{urlencode({**query, 'page': n})}"

                links: list[str] = []
                if page < last:
                    links.append(f'<{page_url(page + 1)}>; rel="next"')
                    if api.advertise_last:
                        links.append(f'<{page_url(last)}>; rel="last"')
                headers = {"Link": ", ".join(links)} if links else {}
                self._send(200, chunk, headers)

        self._server = ThreadingHTTPServer(("127.0.0.1", 0), Handler)
        self._thread = threading.Thread(target=self._server.serve_forever, daemon=True)
        self._thread.start()
        return self

    def __exit__(self, *exc: object) -> None:
        assert self._server is not None
        self._server.shutdown()
        self._server.server_close()


def widget_routes(slug: str = "acme/widget") -> dict[str, Any]:
    """Four issues/PRs, three issue comments, two review comments, three users."""

    api = f"http://fixture/repos/{slug}"
    listing = [
        {
            "number": 1,
            "title": "Crash on start",
            "body": "The app crashes when started.",
            "user": {"login": "alice"},
            "author_association": "OWNER",
            "created_at": "2021-01-05T10:00:00Z",
            "closed_at": "2021-01-07T10:00:00Z",
            "labels": [{"name": "bug"}],
            "reactions": {"+1": 2, "heart": 1, "total_count": 3},
        },
        {
            "number": 2,
            "title": "Fix crash",
            "body": "This fixes the crash in `main()`.",
            "user": {"login": "bob"},
            "author_association": "CONTRIBUTOR",
            "created_at": "2021-01-10T00:00:00Z",
            "closed_at": "2021-01-11T00:00:00Z",
            "labels": [],
            "pull_request": {"url": f"{api}/pulls/2"},
        },
        {
            "number": 3,
            "title": "Docs are thin",
            "body": "We should document the config file.",
            "user": {"login": "carol"},
            "author_association": "NONE",
            "created_at": "2021-02-01T00:00:00Z",
            "closed_at": None,
            "labels": [{"name": "good first issue"}],
        },
        {
            "number": 4,
            "title": "Try a rewrite",
            "body": "",
            "user": {"login": "alice"},
            "author_association": "OWNER",
            "created_at": "2021-03-02T00:00:00Z",
            "closed_at": "2021-03-03T00:00:00Z",
            "labels": [],
            "pull_request": {"url": f"{api}/pulls/4"},
        },
    ]
    pulls = [
        {"number": 2, "merged_at": "2021-01-11T00:00:00Z"},
        {"number": 4, "merged_at": None},
    ]
    issue_comments = [
        {
            "id": 101,
            "issue_url": f"{api}/issues/1",
            "user": {"login": "bob"},
            "author_association": "CONTRIBUTOR",
            "created_at": "2021-01-06T10:00:00Z",
            "body": "Thanks, `foo()` fixes it.",
        },
        {
            "id": 102,
            "issue_url": f"{api}/issues/2",
            "user": {"login": "alice"},
            "author_association": "OWNER",
            "created_at": "2021-01-10T06:00:00Z",
            "body": "Looks good to me, great work",
            "reactions": {"hooray": 1},
        },
        {
            "id": 103,
            "issue_url": f"{api}/issues/3",
            "user": {"login": "alice"},
            "author_association": "OWNER",
            "created_at": "2021-02-02T00:00:00Z",
            "body": "Please add a section to docs/config.md",
        },
    ]
    review_comments = [
        {
            "id": 201,
            "pull_request_url": f"{api}/pulls/2",
            "user": {"login": "alice"},
            "author_association": "OWNER",
            "created_at": "2021-01-10T12:00:00Z",
            "body": "Rename this variable to `max_size`",
        },
        {
            "id": 202,
            "pull_request_url": f"{api}/pulls/4",
            "user": {"login": "bob"},
            "author_association": "CONTRIBUTOR",
            "created_at": "2021-03-02T05:00:00Z",
            "body": "ok",
        },
    ]
    users = {
        "alice": {"login": "alice", "name": "Alice Smith", "location": "Berlin, Germany", "type": "User"},
        "bob": {"login": "bob", "name": "Bob Jones", "location": "Knoxville, TN", "type": "User"},
        "carol": {"login": "carol", "name": None, "location": None, "type": "User"},
    }

    routes: dict[str, Any] = {
        f"repos/{slug}": {"full_name": slug},
        f"repos/{slug}/issues": listing,
        f"repos/{slug}/pulls": pulls,
        f"repos/{slug}/issues/comments": issue_comments,
        f"repos/{slug}/pulls/comments": review_comments,
    }
    for login, data in users.items():
        routes[f"users/{login}"] = data
    return routes
