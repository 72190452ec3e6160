"""Project overview: history span and record totals."""

from __future__ import annotations

import os
from collections import Counter
from collections.abc import Sequence

from ..artifacts import atomic_write_json, project_out_dir
from ..commits.mine import CommitRecord
from ..githost.dump import LoadedDump
from .months import MonthlyRow, months_between

SUMMARY_FILE = "summary.json"


def summarize_project(
    dump: LoadedDump,
    commits: Sequence[CommitRecord],
    rows: Sequence[MonthlyRow],
) -> dict[str, object]:
    ordered = sorted(rows, key=lambda r: r.bucket)
    first = ordered[0].bucket if ordered else None
    last = ordered[-1].bucket if ordered else None
    pulls = dump.pulls
    merged = sum(1 for p in pulls if p.merged_at is not None)
    closed = sum(1 for p in pulls if p.closed_at is not None)
    comment_kinds = Counter(c.parent_kind for c in dump.comments)
    return {
        "repo_slug": dump.repo_slug,
        "first_month": first.label() if first else None,
        "last_month": last.label() if last else None,
        "age_months": months_between(first, last) if first and last else 0,
        "issues": {
            "total": len(dump.issues),
            "closed": sum(1 for i in dump.issues if i.closed_at is not None),
        },
        "pulls": {
            "total": len(pulls),
            "merged": merged,
            "closed_unmerged": closed - merged,
            "open": len(pulls) - closed,
        },
        "comments": {k: comment_kinds.get(k, 0) for k in ("issue", "pull", "review")},
        "commits": {
            "total": len(commits),
            "authors": len({c.author_key for c in commits}),
            "lines_added": sum(c.lines_added for c in commits),
            "lines_deleted": sum(c.lines_deleted for c in commits),
        },
    }


def write_summary(out_dir: str, summary: dict[str, object]) -> str:
    slug = str(summary["repo_slug"])
    path = os.path.join(project_out_dir(out_dir, slug), SUMMARY_FILE)
    atomic_write_json(path, summary)
    return path
