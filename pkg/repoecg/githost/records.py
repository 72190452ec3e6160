"""Normalized mining records.

Timestamps are UTC epoch seconds everywhere. `to_json` / `from_json` define
the on-disk dump schema (one NDJSON file per record kind).
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Literal

from ..coerce import (
    coerce_int,
    coerce_object_list,
    coerce_opt_str,
    coerce_str,
    coerce_str_object_dict,
)

DUMP_SCHEMA_VERSION = 1

ASSOCIATIONS: tuple[str, ...] = (
    "MEMBER",
    "OWNER",
    "COLLABORATOR",
    "CONTRIBUTOR",
    "FIRST_TIME_CONTRIBUTOR",
    "FIRST_TIMER",
    "NONE",
)
ACCOUNT_TYPES: tuple[str, ...] = ("User", "Bot", "Organization")
PARENT_KINDS: tuple[str, ...] = ("issue", "pull", "review")

# Issue/PR conversation comments and review comments are numbered in
# separate id spaces; a comment is identified by (space, id).
ID_SPACES: tuple[str, ...] = ("issue", "review")
CommentKey = tuple[str, int]

# Skew tolerated between merged_at and closed_at.
MERGE_CLOSE_SKEW_S = 60

RecordKind = Literal["issue", "pull", "comment", "profile"]
RECORD_KINDS: tuple[RecordKind, ...] = ("issue", "pull", "comment", "profile")

# Dump file name per record kind.
KIND_FILES: dict[str, str] = {
    "issue": "issues.ndjson",
    "pull": "pulls.ndjson",
    "comment": "comments.ndjson",
    "profile": "profiles.ndjson",
}

# GitHub reaction summary keys (the summary also carries url/total_count).
REACTION_KEYS: tuple[str, ...] = (
    "+1",
    "-1",
    "laugh",
    "hooray",
    "confused",
    "heart",
    "rocket",
    "eyes",
)


class RecordFormatError(ValueError):
    """A stored record does not match the dump schema."""


def parse_utc(value: object) -> int | None:
    """Parse an ISO-8601 timestamp (any offset) into UTC epoch seconds."""

    if value is None or value == "":
        return None
    if isinstance(value, bool):
        raise RecordFormatError(f"invalid timestamp: {value!r}")
    if isinstance(value, int):
        return value
    if not isinstance(value, str):
        raise RecordFormatError(f"invalid timestamp: {value!r}")
    text = value.strip()
    if text.endswith("Z"):
        text = text[:-1] + "+00:00"
    try:
        dt = datetime.fromisoformat(text)
    except ValueError as exc:
        raise RecordFormatError(f"invalid timestamp: {value!r}") from exc
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return int(dt.timestamp())


def normalize_association(value: object) -> str:
    s = coerce_str(value).strip().upper()
    return s if s in ASSOCIATIONS else "NONE"


def reaction_counts_from_api(value: object) -> dict[str, int]:
    summary = coerce_str_object_dict(value)
    out: dict[str, int] = {}
    for key in REACTION_KEYS:
        n = coerce_int(summary.get(key), 0)
        if n > 0:
            out[key] = n
    return out


def _require_int(data: Mapping[str, object], key: str, *, minimum: int = 0) -> int:
    v = data.get(key)
    if isinstance(v, bool) or not isinstance(v, int) or v < minimum:
        raise RecordFormatError(f"field {key!r} must be an integer >= {minimum}")
    return v


def _opt_int(data: Mapping[str, object], key: str) -> int | None:
    v = data.get(key)
    if v is None:
        return None
    if isinstance(v, bool) or not isinstance(v, int):
        raise RecordFormatError(f"field {key!r} must be an integer or null")
    return v


def _require_str(data: Mapping[str, object], key: str, *, nonempty: bool = False) -> str:
    v = data.get(key)
    if not isinstance(v, str) or (nonempty and not v):
        raise RecordFormatError(f"field {key!r} must be a string")
    return v


def _reactions(data: Mapping[str, object]) -> dict[str, int]:
    raw = coerce_str_object_dict(data.get("reaction_counts"))
    out: dict[str, int] = {}
    for k, v in sorted(raw.items()):
        if isinstance(v, bool) or not isinstance(v, int) or v < 0:
            raise RecordFormatError("reaction_counts values must be nonnegative integers")
        out[k] = v
    return out


@dataclass(frozen=True)
class IssueRecord:
    repo_slug: str
    number: int
    title: str
    body: str
    author_login: str
    author_association: str
    created_at: int
    closed_at: int | None = None
    labels: tuple[str, ...] = ()
    reaction_counts: Mapping[str, int] = field(default_factory=dict)
    is_pull: bool = False

    def __post_init__(self) -> None:
        if self.number < 1:
            raise RecordFormatError(f"number must be positive: {self.number}")
        if self.closed_at is not None and self.closed_at < self.created_at:
            raise RecordFormatError(
                f"closed_at before created_at for #{self.number} in {self.repo_slug}"
            )

    def to_json(self) -> dict[str, object]:
        return {
            "repo_slug": self.repo_slug,
            "number": self.number,
            "title": self.title,
            "body": self.body,
            "author_login": self.author_login,
            "author_association": self.author_association,
            "created_at": self.created_at,
            "closed_at": self.closed_at,
            "labels": list(self.labels),
            "reaction_counts": dict(sorted(self.reaction_counts.items())),
            "is_pull": self.is_pull,
        }

    @classmethod
    def from_json(cls, data: Mapping[str, object]) -> IssueRecord:
        if data.get("is_pull") is not False:
            raise RecordFormatError("issue record must have is_pull=false")
        return cls(**_issue_fields(data))


@dataclass(frozen=True)
class PullRecord(IssueRecord):
    merged_at: int | None = None
    is_pull: bool = True

    def __post_init__(self) -> None:
        super().__post_init__()
        if self.merged_at is not None:
            if self.closed_at is None:
                raise RecordFormatError(f"merged PR #{self.number} has no closed_at")
            if self.merged_at > self.closed_at + MERGE_CLOSE_SKEW_S:
                raise RecordFormatError(f"merged_at after closed_at for PR #{self.number}")

    def to_json(self) -> dict[str, object]:
        out = super().to_json()
        out["merged_at"] = self.merged_at
        return out

    @classmethod
    def from_json(cls, data: Mapping[str, object]) -> PullRecord:
        if data.get("is_pull") is not True:
            raise RecordFormatError("pull record must have is_pull=true")
        fields = _issue_fields(data)
        return cls(**fields, merged_at=_opt_int(data, "merged_at"))


def _issue_fields(data: Mapping[str, object]) -> dict[str, object]:
    labels = coerce_object_list(data.get("labels"))
    if not all(isinstance(x, str) for x in labels):
        raise RecordFormatError("labels must be a list of strings")
    assoc = _require_str(data, "author_association")
    if assoc not in ASSOCIATIONS:
        raise RecordFormatError(f"unknown author_association: {assoc!r}")
    return {
        "repo_slug": _require_str(data, "repo_slug", nonempty=True),
        "number": _require_int(data, "number", minimum=1),
        "title": _require_str(data, "title"),
        "body": _require_str(data, "body"),
        "author_login": _require_str(data, "author_login"),
        "author_association": assoc,
        "created_at": _require_int(data, "created_at"),
        "closed_at": _opt_int(data, "closed_at"),
        "labels": tuple(str(x) for x in labels),
        "reaction_counts": _reactions(data),
    }


@dataclass(frozen=True)
class CommentRecord:
    repo_slug: str
    parent_kind: str
    parent_number: int
    comment_id: int
    author_login: str
    author_association: str
    created_at: int
    body: str
    reaction_counts: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.parent_kind not in PARENT_KINDS:
            raise RecordFormatError(f"unknown parent_kind: {self.parent_kind!r}")
        if self.parent_number < 1:
            raise RecordFormatError("parent_number must be positive")

    @property
    def key(self) -> CommentKey:
        return ("review" if self.parent_kind == "review" else "issue", self.comment_id)

    @property
    def on_pull(self) -> bool:
        return self.parent_kind in ("pull", "review")

    def to_json(self) -> dict[str, object]:
        return {
            "repo_slug": self.repo_slug,
            "parent_kind": self.parent_kind,
            "parent_number": self.parent_number,
            "comment_id": self.comment_id,
            "author_login": self.author_login,
            "author_association": self.author_association,
            "created_at": self.created_at,
            "body": self.body,
            "reaction_counts": dict(sorted(self.reaction_counts.items())),
        }

    @classmethod
    def from_json(cls, data: Mapping[str, object]) -> CommentRecord:
        assoc = _require_str(data, "author_association")
        if assoc not in ASSOCIATIONS:
            raise RecordFormatError(f"unknown author_association: {assoc!r}")
        return cls(
            repo_slug=_require_str(data, "repo_slug", nonempty=True),
            parent_kind=_require_str(data, "parent_kind"),
            parent_number=_require_int(data, "parent_number", minimum=1),
            comment_id=_require_int(data, "comment_id"),
            author_login=_require_str(data, "author_login"),
            author_association=assoc,
            created_at=_require_int(data, "created_at"),
            body=_require_str(data, "body"),
            reaction_counts=_reactions(data),
        )


@dataclass(frozen=True)
class UserProfile:
    login: str
    display_name: str | None = None
    location_raw: str | None = None
    account_type: str = "User"
    company: str | None = None

    def __post_init__(self) -> None:
        if not self.login:
            raise RecordFormatError("login must be nonempty")
        if self.account_type not in ACCOUNT_TYPES:
            raise RecordFormatError(f"unknown account_type: {self.account_type!r}")

    def to_json(self) -> dict[str, object]:
        return {
            "login": self.login,
            "display_name": self.display_name,
            "location_raw": self.location_raw,
            "account_type": self.account_type,
            "company": self.company,
        }

    @classmethod
    def from_json(cls, data: Mapping[str, object]) -> UserProfile:
        return cls(
            login=_require_str(data, "login", nonempty=True),
            display_name=coerce_opt_str(data.get("display_name")),
            location_raw=coerce_opt_str(data.get("location_raw")),
            account_type=_require_str(data, "account_type"),
            company=coerce_opt_str(data.get("company")),
        )


@dataclass(frozen=True)
class DumpManifest:
    repo_slug: str
    fetched_at: int
    record_counts: Mapping[str, int]
    api_base_url: str
    schema_version: int = DUMP_SCHEMA_VERSION

    def to_json(self) -> dict[str, object]:
        return {
            "repo_slug": self.repo_slug,
            "fetched_at": self.fetched_at,
            "record_counts": dict(sorted(self.record_counts.items())),
            "api_base_url": self.api_base_url,
            "schema_version": self.schema_version,
        }

    @classmethod
    def from_json(cls, data: Mapping[str, object]) -> DumpManifest:
        counts_raw = coerce_str_object_dict(data.get("record_counts"))
        counts = {k: coerce_int(v, -1) for k, v in counts_raw.items()}
        if any(v < 0 for v in counts.values()):
            raise RecordFormatError("record_counts must be nonnegative integers")
        return cls(
            repo_slug=_require_str(data, "repo_slug", nonempty=True),
            fetched_at=_require_int(data, "fetched_at"),
            record_counts=counts,
            api_base_url=_require_str(data, "api_base_url"),
            schema_version=_require_int(data, "schema_version"),
        )


def record_sort_key(record: IssueRecord | CommentRecord) -> tuple[int, int, str]:
    if isinstance(record, CommentRecord):
        space, cid = record.key
        return (record.created_at, cid, space)
    return (record.created_at, record.number, "")
