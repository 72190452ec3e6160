"""Aggregate raw records into per-month primary and temporal metrics."""

from __future__ import annotations

import re
from collections import defaultdict
from collections.abc import Callable, Hashable, Iterable, Sequence
from typing import TypeVar

from ..commits.mine import CommitRecord
from ..errors import DuplicateRecordError
from ..githost.records import CommentRecord, IssueRecord, PullRecord, record_sort_key
from .months import MonthBucket, MonthlyRow, month_range
from .temporal import closure_duration, mean_or_none, response_time

T = TypeVar("T")

NEWCOMER_LABELS = frozenset({"goodfirstissue", "helpwanted"})
DUPLICATE_LABEL = "duplicate"

_LABEL_SEP_RE = re.compile(r"[\s\-_]+")


def normalize_label(name: str) -> str:
    """Lowercase with separators removed: 'Good First-Issue' -> 'goodfirstissue'."""

    return _LABEL_SEP_RE.sub("", (name or "").strip().lower())


def dedupe_records(
    records: Iterable[T], key: Callable[[T], Hashable], kind: str
) -> list[T]:
    """Drop identical duplicates; conflicting duplicates are a hard error."""

    seen: dict[Hashable, T] = {}
    for r in records:
        k = key(r)
        prev = seen.get(k)
        if prev is None:
            seen[k] = r
        elif prev != r:
            raise DuplicateRecordError(f"conflicting duplicate {kind} record: {k!r}")
    return list(seen.values())


def _label_usage(
    artifacts: Sequence[IssueRecord], slug: str
) -> tuple[dict[MonthBucket, int], dict[MonthBucket, int]]:
    total: dict[MonthBucket, int] = defaultdict(int)
    first_use: dict[str, int] = {}
    for a in artifacts:
        total[MonthBucket.of(slug, a.created_at)] += len(a.labels)
        for name in a.labels:
            key = normalize_label(name)
            if key not in first_use or a.created_at < first_use[key]:
                first_use[key] = a.created_at
    new: dict[MonthBucket, int] = defaultdict(int)
    for ts in first_use.values():
        new[MonthBucket.of(slug, ts)] += 1
    return total, new


def _reactions(r: IssueRecord | CommentRecord) -> int:
    return sum(r.reaction_counts.values())


def aggregate_monthly(
    *,
    slug: str,
    issues: Sequence[IssueRecord] = (),
    pulls: Sequence[PullRecord] = (),
    comments: Sequence[CommentRecord] = (),
    commits: Sequence[CommitRecord] = (),
    warnings: list[str] | None = None,
) -> list[MonthlyRow]:
    """Primary and temporal metrics per calendar month (UTC).

    Months run from the first to the last month with any activity; gap
    months carry zero counts and absent durations.
    """

    issues = dedupe_records(
        (i for i in issues if not i.is_pull), lambda r: r.number, "issue"
    )
    pulls = dedupe_records(pulls, lambda r: r.number, "pull")
    comments = dedupe_records(comments, lambda r: r.key, "comment")
    commits = dedupe_records(commits, lambda r: r.sha, "commit")

    def month(ts: int) -> MonthBucket:
        return MonthBucket.of(slug, ts)

    stamps: list[int] = []
    for a in (*issues, *pulls):
        stamps.append(a.created_at)
        if a.closed_at is not None:
            stamps.append(a.closed_at)
    for p in pulls:
        if p.merged_at is not None:
            stamps.append(p.merged_at)
    stamps.extend(c.created_at for c in comments)
    stamps.extend(c.authored_at for c in commits)
    if not stamps:
        return []

    counts: dict[str, dict[MonthBucket, int]] = defaultdict(lambda: defaultdict(int))
    durations: dict[str, dict[MonthBucket, list[int]]] = defaultdict(
        lambda: defaultdict(list)
    )
    distinct: dict[str, dict[MonthBucket, set[str]]] = defaultdict(
        lambda: defaultdict(set)
    )
    ratios: dict[str, dict[MonthBucket, list[float]]] = defaultdict(
        lambda: defaultdict(list)
    )

    comments_by_parent: dict[tuple[bool, int], list[CommentRecord]] = defaultdict(list)
    for c in sorted(comments, key=record_sort_key):
        comments_by_parent[(c.on_pull, c.parent_number)].append(c)
        m = month(c.created_at)
        if c.parent_kind == "issue":
            counts["issue_comments"][m] += 1
            counts["reactions_issue_comments"][m] += _reactions(c)
        elif c.parent_kind == "pull":
            counts["pr_comments"][m] += 1
        else:
            counts["review_comments"][m] += 1
            counts["reactions_review_comments"][m] += _reactions(c)

    for i in issues:
        m = month(i.created_at)
        counts["issues_created"][m] += 1
        counts["reactions_issues"][m] += _reactions(i)
        if i.author_login:
            distinct["issue_reporters"][m].add(i.author_login)
        labels = {normalize_label(x) for x in i.labels}
        if labels & NEWCOMER_LABELS:
            counts["newcomer_issues"][m] += 1
        if DUPLICATE_LABEL in labels:
            counts["deduplicated_issues"][m] += 1
        if i.closed_at is not None:
            cm = month(i.closed_at)
            counts["issues_closed"][cm] += 1
            durations["issue_closure_duration"][cm].append(
                closure_duration(i.created_at, i.closed_at, warnings)
            )
        rt = response_time(i, comments_by_parent.get((False, i.number), []))
        if rt is not None:
            durations["issue_response_time"][m].append(rt)

    for p in pulls:
        m = month(p.created_at)
        counts["prs_created"][m] += 1
        if p.author_login:
            distinct["pr_creators"][m].add(p.author_login)
        if p.closed_at is not None:
            cm = month(p.closed_at)
            counts["prs_closed"][cm] += 1
            durations["pr_closure_duration"][cm].append(
                closure_duration(p.created_at, p.closed_at, warnings)
            )
        if p.merged_at is not None:
            counts["prs_merged"][month(p.merged_at)] += 1
        rt = response_time(p, comments_by_parent.get((True, p.number), []))
        if rt is not None:
            durations["pr_response_time"][m].append(rt)

    issue_label_total, issue_label_new = _label_usage(issues, slug)
    pr_label_total, pr_label_new = _label_usage(pulls, slug)
    counts["issue_labels_total"] = issue_label_total
    counts["issue_labels_new"] = issue_label_new
    counts["pr_labels_total"] = pr_label_total
    counts["pr_labels_new"] = pr_label_new

    for c in commits:
        m = month(c.authored_at)
        counts["commits_total"][m] += 1
        counts["parent_commits"][m] += c.parent_count
        counts["lines_added"][m] += c.lines_added
        counts["lines_deleted"][m] += c.lines_deleted
        distinct["commit_authors"][m].add(c.author_key)
        for cid, v in (
            ("dmm_unit_size", c.dmm_unit_size),
            ("dmm_unit_complexity", c.dmm_unit_complexity),
            ("dmm_unit_interfacing", c.dmm_unit_interfacing),
        ):
            if v is not None:
                ratios[cid][m].append(v)

    count_ids = (
        "issues_created",
        "issues_closed",
        "prs_created",
        "prs_closed",
        "prs_merged",
        "issue_comments",
        "pr_comments",
        "review_comments",
        "commits_total",
        "parent_commits",
        "lines_added",
        "lines_deleted",
        "issue_labels_total",
        "issue_labels_new",
        "pr_labels_total",
        "pr_labels_new",
        "newcomer_issues",
        "deduplicated_issues",
        "reactions_issues",
        "reactions_issue_comments",
        "reactions_review_comments",
    )
    distinct_ids = ("issue_reporters", "pr_creators", "commit_authors")
    duration_ids = (
        "issue_closure_duration",
        "pr_closure_duration",
        "issue_response_time",
        "pr_response_time",
    )
    ratio_ids = ("dmm_unit_size", "dmm_unit_complexity", "dmm_unit_interfacing")

    first = month(min(stamps))
    last = month(max(stamps))
    rows: list[MonthlyRow] = []
    for m in month_range(first, last):
        values: dict[str, float | int | None] = {}
        for cid in count_ids:
            values[cid] = counts[cid].get(m, 0)
        for cid in distinct_ids:
            values[cid] = len(distinct[cid].get(m, ()))
        for cid in duration_ids:
            values[cid] = mean_or_none(durations[cid].get(m, []))
        for cid in ratio_ids:
            values[cid] = mean_or_none(ratios[cid].get(m, []))
        opened = counts["issues_created"].get(m, 0)
        closed = counts["issues_closed"].get(m, 0)
        values["issues_closed_open_ratio"] = closed / opened if opened else None
        rows.append(MonthlyRow(m, values))
    return rows
