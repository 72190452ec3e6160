"""Temporal metrics: closure duration and first-response time."""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence

from ..githost.records import CommentRecord, IssueRecord

logger = logging.getLogger(__name__)


def closure_duration(
    created_at: int, closed_at: int, warnings: list[str] | None = None
) -> int:
    """Seconds from creation to closure; clock anomalies clamp to 0."""

    seconds = closed_at - created_at
    if seconds < 0:
        msg = f"negative_duration created_at={created_at} closed_at={closed_at}"
        logger.warning(msg)
        if warnings is not None:
            warnings.append(msg)
        return 0
    return seconds


def response_time(
    parent: IssueRecord, comments: Sequence[CommentRecord]
) -> int | None:
    """Seconds to the first comment by someone other than the parent's author."""

    for c in comments:
        if c.author_login and c.author_login != parent.author_login:
            return max(0, c.created_at - parent.created_at)
    return None


def mean_or_none(values: Iterable[float | int]) -> float | None:
    vals = list(values)
    if not vals:
        return None
    return sum(vals) / len(vals)
