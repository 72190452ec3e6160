"""Canonical component registry.

Column order of monthly.csv follows `COMPONENTS`. Components on an STG lead
come first, in lead order; auxiliary components (on no lead) close the list.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

ValueKind = Literal["count", "duration", "ratio", "score", "index"]


@dataclass(frozen=True)
class ComponentSpec:
    component_id: str
    kind: ValueKind
    label: str
    # Linear amplitude per value unit for ratio/score/index kinds.
    scale: float = 1.0
    sentiment: bool = False


def _c(cid: str, kind: ValueKind, label: str, **kw: object) -> ComponentSpec:
    return ComponentSpec(cid, kind, label, **kw)  # type: ignore[arg-type]


COMPONENTS: tuple[ComponentSpec, ...] = (
    # Issues / Altruism
    _c("issues_created", "count", "issues created"),
    _c("issues_closed", "count", "issues closed"),
    _c("issue_closure_duration", "duration", "issue closure duration"),
    _c("issue_comments_useful_ratio", "ratio", "ratio of useful issue comments"),
    _c("issue_comments_toxic_ratio", "ratio", "ratio of toxic issue comments"),
    # PRs / Utility
    _c("prs_created", "count", "PRs created"),
    _c("prs_closed", "count", "PRs closed"),
    _c("pr_closure_duration", "duration", "PR closure duration"),
    _c("review_comments_useful_ratio", "ratio", "ratio of useful review comments"),
    _c("review_comments_toxic_ratio", "ratio", "ratio of toxic review comments"),
    # Commits
    _c("commits_total", "count", "total commits"),
    _c("commit_authors", "count", "total authors"),
    _c("dmm_unit_interfacing", "ratio", "unit interfacing"),
    _c("dmm_unit_complexity", "ratio", "cyclomatic complexity"),
    _c("dmm_unit_size", "ratio", "method size"),
    # Developer response
    _c("issue_reporters", "count", "issue reporters"),
    _c("issue_comments", "count", "issue comments"),
    _c("issue_response_time", "duration", "average issue response time"),
    _c("pr_creators", "count", "PR creators"),
    _c("review_comments", "count", "review comments"),
    _c("pr_response_time", "duration", "average PR response time"),
    # Labels
    _c("issue_labels_new", "count", "new issue-labels"),
    _c("issue_labels_total", "count", "total issue-labels"),
    _c("pr_labels_new", "count", "new PR-labels"),
    _c("pr_labels_total", "count", "total PR-labels"),
    # Newcomer support
    _c("newcomer_issues", "count", "newcomer issues"),
    _c("deduplicated_issues", "count", "deduplicated issues"),
    # Sentiment
    _c(
        "issue_comments_sentiment",
        "score",
        "median issue comments' sentiment",
        sentiment=True,
    ),
    _c(
        "review_comments_sentiment",
        "score",
        "median review comments' sentiment",
        sentiment=True,
    ),
    # Readability (Flesch points; 100 points = one amplitude decade)
    _c("issue_comments_readability", "score", "issue comments readability", scale=0.01),
    _c("issue_body_readability", "score", "issue body readability", scale=0.01),
    _c("pr_comments_readability", "score", "PR comments readability", scale=0.01),
    _c("pr_body_readability", "score", "PR body readability", scale=0.01),
    # Emoji reactions
    _c("reactions_issues", "count", "reactions on issues"),
    _c("reactions_issue_comments", "count", "reactions on issue-comments"),
    _c("reactions_review_comments", "count", "reactions on review-comments"),
    # CBE developer C
    _c("affiliation_heterogeneity", "index", "affiliation heterogeneity in commits"),
    _c("parent_commits", "count", "number of parent commits"),
    # CBE developer I / PR
    _c("issue_gender_ratio", "ratio", "gender ratio in issues"),
    _c("issue_location_coverage", "count", "location coverage in issues"),
    _c("pr_gender_ratio", "ratio", "gender ratio in PR"),
    _c("pr_location_coverage", "count", "location coverage in PR"),
    # CBE roles I / PR
    _c("issue_association_heterogeneity", "index", "association heterogeneity in issues"),
    _c("issue_user_type_variation", "index", "user type variation in issues"),
    _c("pr_association_heterogeneity", "index", "association heterogeneity in PR"),
    _c("pr_user_type_variation", "index", "user type variation in PR"),
    # Auxiliary
    _c("prs_merged", "count", "PRs merged"),
    _c("pr_comments", "count", "PR conversation comments"),
    _c("issues_closed_open_ratio", "ratio", "closed issues / opened issues"),
    _c("lines_added", "count", "lines added"),
    _c("lines_deleted", "count", "lines deleted"),
)

COMPONENT_IDS: tuple[str, ...] = tuple(c.component_id for c in COMPONENTS)
BY_ID: dict[str, ComponentSpec] = {c.component_id: c for c in COMPONENTS}

AUXILIARY_IDS: frozenset[str] = frozenset(
    {
        "prs_merged",
        "pr_comments",
        "issues_closed_open_ratio",
        "lines_added",
        "lines_deleted",
    }
)


def component(component_id: str) -> ComponentSpec:
    try:
        return BY_ID[component_id]
    except KeyError:
        raise KeyError(f"unknown component: {component_id!r}") from None
