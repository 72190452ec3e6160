"""Walk a clone's history into per-commit records."""

from __future__ import annotations

import json
import logging
import os
import re
from collections.abc import Mapping, Sequence
from dataclasses import dataclass

from ..artifacts import project_data_dir, write_ndjson
from ..errors import ExecFailureError
from .dmm import RiskThresholds, dmm_scores
from .git import GitClient, GitCommandError
from .units import extract_patch_units

logger = logging.getLogger(__name__)

COMMITS_FILE = "commits.ndjson"

_SHA_RE = re.compile(r"^[0-9a-f]{40}$")
_NOREPLY_RE = re.compile(r"^(?:\d+\+)?([^@]+)@users\.noreply\.github\.com$")

# Record separator / unit separator keep arbitrary author names parseable.
_LOG_FORMAT = "%x1e%H%x1f%an%x1f%ae%x1f%at%x1f%P"


def author_identity(email: str) -> str:
    """Dedup key for commit authors: lowercase email, noreply mapped to login."""

    e = (email or "").strip().lower()
    m = _NOREPLY_RE.match(e)
    if m:
        return m.group(1)
    return e


def _ratio(value: float | None) -> float | None:
    if value is None:
        return None
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"dmm value out of [0,1]: {value}")
    return value


@dataclass(frozen=True)
class CommitRecord:
    sha: str
    author_name: str
    author_email: str
    authored_at: int
    parent_count: int
    files_changed: int = 0
    lines_added: int = 0
    lines_deleted: int = 0
    dmm_unit_size: float | None = None
    dmm_unit_complexity: float | None = None
    dmm_unit_interfacing: float | None = None

    def __post_init__(self) -> None:
        if not _SHA_RE.match(self.sha):
            raise ValueError(f"invalid sha: {self.sha!r}")
        if min(self.parent_count, self.files_changed, self.lines_added, self.lines_deleted) < 0:
            raise ValueError("commit counts must be nonnegative")
        for v in (self.dmm_unit_size, self.dmm_unit_complexity, self.dmm_unit_interfacing):
            _ = _ratio(v)

    @property
    def author_key(self) -> str:
        return author_identity(self.author_email)

    def to_json(self) -> dict[str, object]:
        return {
            "sha": self.sha,
            "author_name": self.author_name,
            "author_email": self.author_email,
            "authored_at": self.authored_at,
            "parent_count": self.parent_count,
            "files_changed": self.files_changed,
            "lines_added": self.lines_added,
            "lines_deleted": self.lines_deleted,
            "dmm_unit_size": self.dmm_unit_size,
            "dmm_unit_complexity": self.dmm_unit_complexity,
            "dmm_unit_interfacing": self.dmm_unit_interfacing,
        }

    @classmethod
    def from_json(cls, data: Mapping[str, object]) -> CommitRecord:
        def opt_float(key: str) -> float | None:
            v = data.get(key)
            if v is None:
                return None
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise ValueError(f"{key} must be a number or null")
            return float(v)

        def req_int(key: str) -> int:
            v = data.get(key)
            if isinstance(v, bool) or not isinstance(v, int):
                raise ValueError(f"{key} must be an integer")
            return v

        def req_str(key: str) -> str:
            v = data.get(key)
            if not isinstance(v, str):
                raise ValueError(f"{key} must be a string")
            return v

        return cls(
            sha=req_str("sha"),
            author_name=req_str("author_name"),
            author_email=req_str("author_email"),
            authored_at=req_int("authored_at"),
            parent_count=req_int("parent_count"),
            files_changed=req_int("files_changed"),
            lines_added=req_int("lines_added"),
            lines_deleted=req_int("lines_deleted"),
            dmm_unit_size=opt_float("dmm_unit_size"),
            dmm_unit_complexity=opt_float("dmm_unit_complexity"),
            dmm_unit_interfacing=opt_float("dmm_unit_interfacing"),
        )


def _parse_numstat(lines: Sequence[str]) -> tuple[int, int, int]:
    files = added = deleted = 0
    for line in lines:
        parts = line.split("\t")
        if len(parts) < 3:
            continue
        files += 1
        # Binary files report "-".
        if parts[0].isdigit():
            added += int(parts[0])
        if parts[1].isdigit():
            deleted += int(parts[1])
    return files, added, deleted


def mine_commits(
    clone_path: str,
    branch: str | None = None,
    *,
    thresholds: RiskThresholds | None = None,
    git: GitClient | None = None,
) -> tuple[list[CommitRecord], list[str]]:
    """One record per commit reachable from `branch` (default HEAD).

    Returns:
      (records ordered by authored_at ascending, warnings)
    """

    client = git or GitClient.for_repo(clone_path)
    client.ensure_repo()

    rev = branch or "HEAD"
    head = client.resolve(rev)
    if head is None:
        if branch:
            raise ExecFailureError(f"branch not found: {branch}")
        return [], []

    warnings: list[str] = []
    records: list[CommitRecord] = []
    for chunk in client.log(head, _LOG_FORMAT).split("\x1e"):
        if not chunk.strip():
            continue
        header, _, rest = chunk.partition("\n")
        fields = header.split("\x1f")
        if len(fields) != 5:
            warnings.append(f"unreadable_commit header={header[:80]!r}")
            continue
        sha, name, email, authored, parents = fields
        parent_count = len(parents.split())
        files, added, deleted = _parse_numstat(rest.splitlines())

        scores = None
        if parent_count <= 1:
            try:
                units, diff_warnings = extract_patch_units(client.show_patch(sha))
                warnings.extend(f"{w} commit={sha}" for w in diff_warnings)
                scores = dmm_scores(units, thresholds)
            except GitCommandError as exc:
                msg = f"unreadable_object commit={sha} error={exc}"
                warnings.append(msg)
                logger.warning(msg)

        records.append(
            CommitRecord(
                sha=sha,
                author_name=name,
                author_email=email.strip().lower(),
                authored_at=int(authored),
                parent_count=parent_count,
                files_changed=files,
                lines_added=added,
                lines_deleted=deleted,
                dmm_unit_size=scores.size if scores else None,
                dmm_unit_complexity=scores.complexity if scores else None,
                dmm_unit_interfacing=scores.interfacing if scores else None,
            )
        )

    records.sort(key=lambda r: r.authored_at)
    return records, warnings


def commits_path(data_dir: str, slug: str) -> str:
    return os.path.join(project_data_dir(data_dir, slug), "raw", COMMITS_FILE)


def write_commits(path: str, records: Sequence[CommitRecord]) -> int:
    return write_ndjson(path, (r.to_json() for r in records))


def load_commits(path: str) -> tuple[list[CommitRecord], list[str]]:
    """Read commits.ndjson; a missing file is an empty history."""

    warnings: list[str] = []
    if not os.path.isfile(path):
        return [], warnings
    out: list[CommitRecord] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                data = json.loads(line)
                if not isinstance(data, dict):
                    raise ValueError("record must be a JSON object")
                out.append(CommitRecord.from_json(data))
            except (ValueError, TypeError) as exc:
                msg = f"malformed_record file={COMMITS_FILE} line={lineno} error={exc}"
                warnings.append(msg)
                logger.warning(msg)
    out.sort(key=lambda r: r.authored_at)
    return out, warnings
