"""Read raw dumps written by `fetch_repo`."""

from __future__ import annotations

import json
import logging
import os
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import TypeVar

from ..errors import MissingInputError, PartialFetchError, SchemaMismatchError
from .fetch import MANIFEST_FILE, raw_dir
from .records import (
    DUMP_SCHEMA_VERSION,
    KIND_FILES,
    CommentRecord,
    DumpManifest,
    IssueRecord,
    PullRecord,
    RecordFormatError,
    UserProfile,
    record_sort_key,
)

logger = logging.getLogger(__name__)

T = TypeVar("T")


@dataclass(frozen=True)
class LoadedDump:
    manifest: DumpManifest
    issues: tuple[IssueRecord, ...] = ()
    pulls: tuple[PullRecord, ...] = ()
    comments: tuple[CommentRecord, ...] = ()
    profiles: tuple[UserProfile, ...] = ()
    warnings: tuple[str, ...] = field(default=())

    @property
    def repo_slug(self) -> str:
        return self.manifest.repo_slug

    def profiles_by_login(self) -> dict[str, UserProfile]:
        return {p.login: p for p in self.profiles}


def read_manifest(path: str) -> DumpManifest:
    manifest_path = os.path.join(path, MANIFEST_FILE)
    if not os.path.isdir(path):
        raise MissingInputError(f"dump not found: {path}")
    if not os.path.isfile(manifest_path):
        raise PartialFetchError(
            f"dump has no manifest (fetch incomplete?): {manifest_path}"
        )
    try:
        with open(manifest_path, encoding="utf-8") as fh:
            data: object = json.load(fh)
    except (OSError, ValueError) as exc:
        raise PartialFetchError(f"unreadable manifest: {manifest_path}") from exc
    if not isinstance(data, dict):
        raise PartialFetchError(f"manifest root must be an object: {manifest_path}")
    version = data.get("schema_version")
    if version != DUMP_SCHEMA_VERSION:
        raise SchemaMismatchError(
            f"unsupported dump schema_version {version!r} (supported: {DUMP_SCHEMA_VERSION})"
        )
    try:
        return DumpManifest.from_json(data)
    except RecordFormatError as exc:
        raise PartialFetchError(f"invalid manifest {manifest_path}: {exc}") from exc


def read_ndjson_records(
    path: str,
    parse: Callable[[dict[str, object]], T],
    warnings: list[str],
) -> list[T]:
    """Parse one record per line; malformed lines are skipped and counted."""

    if not os.path.isfile(path):
        return []
    out: list[T] = []
    name = os.path.basename(path)
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                data = json.loads(line)
                if not isinstance(data, dict):
                    raise RecordFormatError("record must be a JSON object")
                out.append(parse(data))
            except (ValueError, TypeError) as exc:
                msg = f"malformed_record file={name} line={lineno} error={exc}"
                warnings.append(msg)
                logger.warning(msg)
    return out


def load_dump(path: str) -> LoadedDump:
    """Load a dump directory (the `raw/` directory holding the manifest).

    Idempotent and read-only; records come back sorted by (created_at, id).
    """

    manifest = read_manifest(path)
    warnings: list[str] = []

    def load(kind: str, parse: Callable[[dict[str, object]], T]) -> list[T]:
        if kind not in manifest.record_counts:
            return []
        return read_ndjson_records(os.path.join(path, KIND_FILES[kind]), parse, warnings)

    issues = sorted(load("issue", IssueRecord.from_json), key=record_sort_key)
    pulls = sorted(load("pull", PullRecord.from_json), key=record_sort_key)
    comments = sorted(load("comment", CommentRecord.from_json), key=record_sort_key)
    profiles = sorted(load("profile", UserProfile.from_json), key=lambda p: p.login)

    return LoadedDump(
        manifest=manifest,
        issues=tuple(issues),
        pulls=tuple(pulls),
        comments=tuple(comments),
        profiles=tuple(profiles),
        warnings=tuple(warnings),
    )


def load_project_dump(data_dir: str, slug: str) -> LoadedDump:
    return load_dump(raw_dir(data_dir, slug))
