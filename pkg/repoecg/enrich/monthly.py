"""Merge secondary metrics (scores, readability, CBE) into monthly rows."""

from __future__ import annotations

import logging
from collections import defaultdict
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from ..commits.mine import CommitRecord
from ..githost.dump import LoadedDump
from ..githost.records import (
    CommentKey,
    CommentRecord,
    IssueRecord,
    UserProfile,
    record_sort_key,
)
from ..metrics.months import MonthBucket, MonthlyRow
from ..metrics.temporal import mean_or_none
from .diversity import shannon_or_none
from .people import affiliation_of, gender_side, location_coverage, ratio_of_sides
from .readability import readability
from .scorers import TextScore
from .tables import CountryTable, GenderTable, load_country_table, load_gender_table, load_generic_domains

logger = logging.getLogger(__name__)

UNKNOWN_ACCOUNT_TYPE = "Unknown"


@dataclass(frozen=True)
class EnrichContext:
    gender_table: GenderTable = field(default_factory=load_gender_table)
    country_table: CountryTable = field(default_factory=load_country_table)
    generic_domains: frozenset[str] = field(default_factory=load_generic_domains)
    gender_numerator: Literal["female", "male"] = "female"


def _score_components(
    comments: Sequence[CommentRecord],
    scores: Mapping[CommentKey, TextScore],
    failed: frozenset[CommentKey],
    prefix: str,
) -> dict[str, float | None]:
    keys = (f"{prefix}_useful_ratio", f"{prefix}_toxic_ratio", f"{prefix}_sentiment")
    if not comments or any(c.key in failed for c in comments):
        return dict.fromkeys(keys)
    got = [scores[c.key] for c in comments if c.key in scores]
    if len(got) != len(comments):
        return dict.fromkeys(keys)
    n = len(got)
    return {
        keys[0]: sum(s.useful for s in got) / n,
        keys[1]: sum(s.toxic for s in got) / n,
        keys[2]: float(np.median([s.sentiment for s in got])),
    }


def _mean_readability(texts: Sequence[str]) -> float | None:
    return mean_or_none(v for v in (readability(t) for t in texts) if v is not None)


@dataclass
class _Participants:
    """Distinct participants of one side (issues or PRs) in one month."""

    association: dict[str, tuple[int, str]] = field(default_factory=dict)

    def add(self, login: str, association: str, at: int) -> None:
        if not login:
            return
        prev = self.association.get(login)
        if prev is None or at < prev[0]:
            self.association[login] = (at, association)

    def components(
        self, side: str, profiles: Mapping[str, UserProfile], ctx: EnrichContext
    ) -> dict[str, float | int | None]:
        logins = sorted(self.association)
        known = [profiles[x] for x in logins if x in profiles]
        return {
            f"{side}_gender_ratio": ratio_of_sides(
                (
                    gender_side(
                        (profiles[x].display_name if x in profiles else None) or x,
                        ctx.gender_table,
                    )
                    for x in logins
                ),
                ctx.gender_numerator,
            ),
            f"{side}_location_coverage": location_coverage(known, ctx.country_table),
            f"{side}_association_heterogeneity": shannon_or_none(
                self.association[x][1] for x in logins
            ),
            f"{side}_user_type_variation": shannon_or_none(
                profiles[x].account_type if x in profiles else UNKNOWN_ACCOUNT_TYPE
                for x in logins
            ),
        }


def enrich_monthly(
    rows: Sequence[MonthlyRow],
    dump: LoadedDump,
    commits: Sequence[CommitRecord],
    *,
    scores: Mapping[CommentKey, TextScore],
    failed: frozenset[CommentKey] = frozenset(),
    ctx: EnrichContext | None = None,
) -> list[MonthlyRow]:
    """Return `rows` with every secondary component filled in.

    Months without the underlying artifacts get absent values; location
    coverage is a count and is 0 for months without participants.
    """

    ctx = ctx or EnrichContext()
    slug = dump.repo_slug
    profiles = dump.profiles_by_login()

    def month(ts: int) -> MonthBucket:
        return MonthBucket.of(slug, ts)

    issue_comments: dict[MonthBucket, list[CommentRecord]] = defaultdict(list)
    review_comments: dict[MonthBucket, list[CommentRecord]] = defaultdict(list)
    pr_side_comments: dict[MonthBucket, list[CommentRecord]] = defaultdict(list)
    issue_people: dict[MonthBucket, _Participants] = defaultdict(_Participants)
    pr_people: dict[MonthBucket, _Participants] = defaultdict(_Participants)
    issue_bodies: dict[MonthBucket, list[str]] = defaultdict(list)
    pr_bodies: dict[MonthBucket, list[str]] = defaultdict(list)
    affiliations: dict[MonthBucket, list[str]] = defaultdict(list)

    for c in sorted(dump.comments, key=record_sort_key):
        m = month(c.created_at)
        if c.parent_kind == "issue":
            issue_comments[m].append(c)
            issue_people[m].add(c.author_login, c.author_association, c.created_at)
        else:
            pr_side_comments[m].append(c)
            pr_people[m].add(c.author_login, c.author_association, c.created_at)
            if c.parent_kind == "review":
                review_comments[m].append(c)

    artifact: IssueRecord
    for artifact in dump.issues:
        m = month(artifact.created_at)
        issue_bodies[m].append(artifact.body)
        issue_people[m].add(
            artifact.author_login, artifact.author_association, artifact.created_at
        )
    for artifact in dump.pulls:
        m = month(artifact.created_at)
        pr_bodies[m].append(artifact.body)
        pr_people[m].add(
            artifact.author_login, artifact.author_association, artifact.created_at
        )

    for commit in commits:
        affiliations[month(commit.authored_at)].append(
            affiliation_of(commit.author_email, ctx.generic_domains)
        )

    out: list[MonthlyRow] = []
    for row in rows:
        m = row.bucket
        extra: dict[str, float | int | None] = {}
        extra.update(
            _score_components(issue_comments.get(m, []), scores, failed, "issue_comments")
        )
        extra.update(
            _score_components(review_comments.get(m, []), scores, failed, "review_comments")
        )
        extra["issue_comments_readability"] = _mean_readability(
            [c.body for c in issue_comments.get(m, [])]
        )
        extra["pr_comments_readability"] = _mean_readability(
            [c.body for c in pr_side_comments.get(m, [])]
        )
        extra["issue_body_readability"] = _mean_readability(issue_bodies.get(m, []))
        extra["pr_body_readability"] = _mean_readability(pr_bodies.get(m, []))
        extra["affiliation_heterogeneity"] = shannon_or_none(affiliations.get(m, []))
        extra.update(issue_people.get(m, _Participants()).components("issue", profiles, ctx))
        extra.update(pr_people.get(m, _Participants()).components("pr", profiles, ctx))
        out.append(row.merged(extra))
    return out
