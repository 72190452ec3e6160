"""The 18 leads of the sustainability graph and their components.

Each lead has one track, except Readability which draws an issue track and a
PR track inside the same lane. Component order inside a track is the order
the waveform draws its spikes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from ..metrics.registry import BY_ID

Direction = Literal["crest", "trough"]


@dataclass(frozen=True)
class TrackSpec:
    track_id: str
    components: tuple[tuple[str, Direction], ...]
    period_component: str | None = None

    def __post_init__(self) -> None:
        if not self.components:
            raise ValueError(f"track {self.track_id!r} needs at least one component")
        for cid, _ in self.components:
            if cid not in BY_ID:
                raise ValueError(f"unknown component: {cid!r}")
            if BY_ID[cid].kind == "duration":
                raise ValueError(f"duration component {cid!r} cannot be a spike")
        if self.period_component is not None:
            spec = BY_ID.get(self.period_component)
            if spec is None or spec.kind != "duration":
                raise ValueError(f"period component must be a duration: {self.period_component!r}")

    @property
    def crest_components(self) -> tuple[str, ...]:
        return tuple(c for c, d in self.components if d == "crest")

    @property
    def trough_components(self) -> tuple[str, ...]:
        return tuple(c for c, d in self.components if d == "trough")


@dataclass(frozen=True)
class LeadSpec:
    lead_id: str
    label: str
    tracks: tuple[TrackSpec, ...]

    def __post_init__(self) -> None:
        if not self.tracks:
            raise ValueError(f"lead {self.lead_id!r} needs at least one track")

    @property
    def component_ids(self) -> tuple[str, ...]:
        out: list[str] = []
        for t in self.tracks:
            out.extend(c for c, _ in t.components)
            if t.period_component:
                out.append(t.period_component)
        return tuple(dict.fromkeys(out))


def _lead(
    lead_id: str,
    label: str,
    components: tuple[tuple[str, Direction], ...],
    period: str | None = None,
) -> LeadSpec:
    return LeadSpec(lead_id, label, (TrackSpec("", components, period),))


UP: Direction = "crest"
DOWN: Direction = "trough"

LEADS: tuple[LeadSpec, ...] = (
    _lead(
        "issues",
        "Issues",
        (("issues_created", UP), ("issues_closed", DOWN)),
        "issue_closure_duration",
    ),
    _lead(
        "altruism",
        "Altruism",
        (("issue_comments_useful_ratio", UP), ("issue_comments_toxic_ratio", DOWN)),
        "issue_closure_duration",
    ),
    _lead(
        "prs",
        "PRs",
        (("prs_created", UP), ("prs_closed", DOWN)),
        "pr_closure_duration",
    ),
    _lead(
        "utility",
        "Utility",
        (("review_comments_useful_ratio", UP), ("review_comments_toxic_ratio", DOWN)),
        "pr_closure_duration",
    ),
    _lead(
        "commits",
        "Commits",
        (
            ("commits_total", UP),
            ("commit_authors", DOWN),
            ("dmm_unit_interfacing", DOWN),
            ("dmm_unit_complexity", DOWN),
            ("dmm_unit_size", DOWN),
        ),
    ),
    _lead(
        "developer_response_i",
        "Developer Response I",
        (("issue_reporters", UP), ("issue_comments", DOWN)),
        "issue_response_time",
    ),
    _lead(
        "developer_response_pr",
        "Developer Response PR",
        (("pr_creators", UP), ("review_comments", DOWN)),
        "pr_response_time",
    ),
    _lead(
        "labels_i",
        "Labels-I",
        (("issue_labels_new", UP), ("issue_labels_total", DOWN)),
        "issue_response_time",
    ),
    _lead(
        "labels_pr",
        "Labels-PR",
        (("pr_labels_new", UP), ("pr_labels_total", DOWN)),
        "pr_response_time",
    ),
    _lead(
        "newcomer_support",
        "Newcomer Support",
        (("newcomer_issues", UP), ("deduplicated_issues", DOWN)),
        "issue_response_time",
    ),
    _lead(
        "sentiment",
        "Sentiment",
        (("issue_comments_sentiment", UP), ("review_comments_sentiment", DOWN)),
        "issue_response_time",
    ),
    LeadSpec(
        "readability",
        "Readability I/PR",
        (
            TrackSpec(
                "I",
                (("issue_comments_readability", UP), ("issue_body_readability", DOWN)),
                "issue_response_time",
            ),
            TrackSpec(
                "PR",
                (("pr_comments_readability", UP), ("pr_body_readability", DOWN)),
                "pr_response_time",
            ),
        ),
    ),
    _lead(
        "emoji_reactions",
        "Emoji Reactions",
        (
            ("reactions_issues", UP),
            ("reactions_issue_comments", DOWN),
            ("reactions_review_comments", UP),
        ),
    ),
    _lead(
        "cbe_developer_c",
        "CBE developer C",
        (("affiliation_heterogeneity", UP), ("parent_commits", DOWN)),
    ),
    _lead(
        "cbe_developer_i",
        "CBE developer I",
        (("issue_gender_ratio", UP), ("issue_location_coverage", DOWN)),
        "issue_response_time",
    ),
    _lead(
        "cbe_developer_pr",
        "CBE developer PR",
        (("pr_gender_ratio", UP), ("pr_location_coverage", DOWN)),
        "pr_response_time",
    ),
    _lead(
        "cbe_roles_i",
        "CBE roles I",
        (
            ("issue_association_heterogeneity", UP),
            ("issue_user_type_variation", DOWN),
        ),
        "issue_response_time",
    ),
    _lead(
        "cbe_roles_pr",
        "CBE roles PR",
        (("pr_association_heterogeneity", UP), ("pr_user_type_variation", DOWN)),
        "pr_response_time",
    ),
)

LEAD_IDS: tuple[str, ...] = tuple(lead.lead_id for lead in LEADS)
