"""Mine issues, pull requests, comments and profiles into a raw dump."""

from __future__ import annotations

import logging
import os
import re
from collections.abc import Collection, Iterable, Mapping
from typing import Any

from ..artifacts import (
    atomic_write_json,
    project_data_dir,
    remove_if_exists,
    write_ndjson,
)
from ..coerce import coerce_int, coerce_opt_str, coerce_str, coerce_str_object_dict
from ..errors import ExecFailureError
from .client import ApiClient
from .records import (
    KIND_FILES,
    RECORD_KINDS,
    CommentRecord,
    DumpManifest,
    IssueRecord,
    PullRecord,
    RecordFormatError,
    UserProfile,
    normalize_association,
    parse_utc,
    reaction_counts_from_api,
    record_sort_key,
)

logger = logging.getLogger(__name__)

MANIFEST_FILE = "manifest.json"

_SLUG_RE = re.compile(r"^[A-Za-z0-9_.-]+/[A-Za-z0-9_.-]+$")
_NUMBER_TAIL_RE = re.compile(r"/(\d+)$")


def validate_slug(slug: str) -> str:
    s = (slug or "").strip()
    if not _SLUG_RE.match(s):
        raise ExecFailureError(f"repository must be in the form <owner/name>: {slug!r}")
    return s


def raw_dir(data_dir: str, slug: str) -> str:
    return os.path.join(project_data_dir(data_dir, slug), "raw")


def _login(user: object) -> str:
    return coerce_str(coerce_str_object_dict(user).get("login"))


def _labels(value: object) -> tuple[str, ...]:
    names: list[str] = []
    if isinstance(value, list):
        for item in value:
            if isinstance(item, str):
                names.append(item)
            else:
                name = coerce_str(coerce_str_object_dict(item).get("name"))
                if name:
                    names.append(name)
    return tuple(names)


def _number_from_url(url: object) -> int:
    m = _NUMBER_TAIL_RE.search(coerce_str(url))
    return int(m.group(1)) if m else 0


def _created(item: Mapping[str, Any]) -> int:
    ts = parse_utc(item.get("created_at"))
    if ts is None:
        raise RecordFormatError("missing created_at")
    return ts


def issue_from_api(slug: str, item: Mapping[str, Any]) -> IssueRecord:
    return IssueRecord(
        repo_slug=slug,
        number=coerce_int(item.get("number")),
        title=coerce_str(item.get("title")),
        body=coerce_str(item.get("body")),
        author_login=_login(item.get("user")),
        author_association=normalize_association(item.get("author_association")),
        created_at=_created(item),
        closed_at=parse_utc(item.get("closed_at")),
        labels=_labels(item.get("labels")),
        reaction_counts=reaction_counts_from_api(item.get("reactions")),
    )


def pull_from_api(
    slug: str, item: Mapping[str, Any], merged_at: int | None
) -> PullRecord:
    base = issue_from_api(slug, item)
    return PullRecord(
        repo_slug=base.repo_slug,
        number=base.number,
        title=base.title,
        body=base.body,
        author_login=base.author_login,
        author_association=base.author_association,
        created_at=base.created_at,
        closed_at=base.closed_at,
        labels=base.labels,
        reaction_counts=base.reaction_counts,
        merged_at=merged_at,
    )


def comment_from_api(
    slug: str, item: Mapping[str, Any], *, parent_kind: str, parent_number: int
) -> CommentRecord:
    return CommentRecord(
        repo_slug=slug,
        parent_kind=parent_kind,
        parent_number=parent_number,
        comment_id=coerce_int(item.get("id")),
        author_login=_login(item.get("user")),
        author_association=normalize_association(item.get("author_association")),
        created_at=_created(item),
        body=coerce_str(item.get("body")),
        reaction_counts=reaction_counts_from_api(item.get("reactions")),
    )


def profile_from_api(item: Mapping[str, Any]) -> UserProfile:
    account_type = coerce_str(item.get("type")) or "User"
    if account_type not in ("User", "Bot", "Organization"):
        account_type = "User"
    return UserProfile(
        login=coerce_str(item.get("login")),
        display_name=coerce_opt_str(item.get("name")),
        location_raw=coerce_opt_str(item.get("location")),
        account_type=account_type,
        company=coerce_opt_str(item.get("company")),
    )


def _dedupe_sorted(records: Iterable[IssueRecord | CommentRecord]) -> list[Any]:
    by_id: dict[object, IssueRecord | CommentRecord] = {}
    for r in records:
        by_id[r.key if isinstance(r, CommentRecord) else r.number] = r
    return sorted(by_id.values(), key=record_sort_key)


def fetch_repo(
    client: ApiClient,
    *,
    slug: str,
    data_dir: str,
    kinds: Collection[str] = RECORD_KINDS,
    fetched_at: int | None = None,
    warnings: list[str] | None = None,
) -> DumpManifest:
    """Fetch the requested record kinds and persist them as a raw dump.

    The manifest is removed first and written last, so an interrupted fetch
    leaves a dump that `load_dump` rejects as partial. Profiles of deleted
    accounts (404) are skipped with a `profile_missing` warning.
    """

    slug = validate_slug(slug)
    unknown = sorted(set(kinds) - set(RECORD_KINDS))
    if unknown:
        raise ExecFailureError(f"unknown record kinds: {', '.join(unknown)}")

    out = raw_dir(data_dir, slug)
    os.makedirs(out, exist_ok=True)
    _ = remove_if_exists(os.path.join(out, MANIFEST_FILE))

    # Repo existence / auth check before paging.
    _ = client.get_json(f"repos/{slug}")

    listing = client.paginate(
        f"repos/{slug}/issues",
        {"state": "all", "sort": "created", "direction": "asc"},
    )
    issue_items = [x for x in listing if "pull_request" not in x]
    pull_items = [x for x in listing if "pull_request" in x]
    pull_numbers = {coerce_int(x.get("number")) for x in pull_items}

    issues: list[IssueRecord] = []
    pulls: list[PullRecord] = []
    comments: list[CommentRecord] = []

    if "issue" in kinds:
        issues = _dedupe_sorted(issue_from_api(slug, x) for x in issue_items)

    if "pull" in kinds:
        merged: dict[int, int | None] = {}
        for x in client.paginate(f"repos/{slug}/pulls", {"state": "all"}):
            merged[coerce_int(x.get("number"))] = parse_utc(x.get("merged_at"))
        pulls = _dedupe_sorted(
            pull_from_api(slug, x, merged.get(coerce_int(x.get("number"))))
            for x in pull_items
        )

    if "comment" in kinds:
        fetched: list[CommentRecord] = []
        for x in client.paginate(f"repos/{slug}/issues/comments"):
            number = _number_from_url(x.get("issue_url"))
            if number < 1:
                logger.warning("skipping comment %s without parent", x.get("id"))
                continue
            kind = "pull" if number in pull_numbers else "issue"
            fetched.append(
                comment_from_api(slug, x, parent_kind=kind, parent_number=number)
            )
        for x in client.paginate(f"repos/{slug}/pulls/comments"):
            number = _number_from_url(x.get("pull_request_url"))
            if number < 1:
                logger.warning("skipping review comment %s without parent", x.get("id"))
                continue
            fetched.append(
                comment_from_api(slug, x, parent_kind="review", parent_number=number)
            )
        comments = _dedupe_sorted(fetched)

    profiles: list[UserProfile] = []
    if "profile" in kinds:
        logins = sorted(
            {r.author_login for r in (*issues, *pulls, *comments) if r.author_login}
        )
        data = client.get_many([f"users/{login}" for login in logins], missing_ok=True)
        for login, d in zip(logins, data, strict=True):
            if d is None:
                msg = f"profile_missing login={login} repo={slug}"
                logger.warning(msg)
                if warnings is not None:
                    warnings.append(msg)
                continue
            if isinstance(d, dict):
                profiles.append(profile_from_api(d))
        profiles.sort(key=lambda p: p.login)

    counts: dict[str, int] = {}
    by_kind: dict[str, list[Any]] = {
        "issue": issues,
        "pull": pulls,
        "comment": comments,
        "profile": profiles,
    }
    for kind in RECORD_KINDS:
        if kind not in kinds:
            continue
        path = os.path.join(out, KIND_FILES[kind])
        counts[kind] = write_ndjson(path, (r.to_json() for r in by_kind[kind]))

    manifest = DumpManifest(
        repo_slug=slug,
        fetched_at=int(client.clock()) if fetched_at is None else fetched_at,
        record_counts=counts,
        api_base_url=client.base_url,
    )
    atomic_write_json(os.path.join(out, MANIFEST_FILE), manifest.to_json())
    logger.info(
        "fetched %s: %s",
        slug,
        ", ".join(f"{k}={v}" for k, v in sorted(counts.items())),
    )
    return manifest
