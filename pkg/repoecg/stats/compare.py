"""Cross-project comparison over per-component history means."""

from __future__ import annotations

import itertools
import logging
from collections.abc import Mapping, Sequence
from dataclasses import dataclass

from ..errors import InsufficientDataError
from ..metrics.months import MonthlyRow
from ..metrics.registry import BY_ID
from ..stg.leads import LEADS
from .nonparam import (
    AllZeroDifferencesError,
    cliffs_delta,
    holm_bonferroni,
    stars_for,
    wilcoxon_signed_rank,
)

logger = logging.getLogger(__name__)

MIN_SHARED_COMPONENTS = 5


def comparison_components() -> tuple[str, ...]:
    """Unique graph components in lead order, sentiment excluded."""

    out: list[str] = []
    for lead in LEADS:
        out.extend(c for c in lead.component_ids if not BY_ID[c].sentiment)
    return tuple(dict.fromkeys(out))


COMPARISON_COMPONENTS: tuple[str, ...] = comparison_components()


@dataclass(frozen=True)
class ComponentMeanVector:
    repo_slug: str
    # Ordered as COMPARISON_COMPONENTS; None = absent for the whole history.
    means: Mapping[str, float | None]

    def values(self) -> list[float | None]:
        return [self.means.get(c) for c in COMPARISON_COMPONENTS]


def component_means(repo_slug: str, rows: Sequence[MonthlyRow]) -> ComponentMeanVector:
    means: dict[str, float | None] = {}
    for cid in COMPARISON_COMPONENTS:
        present = [float(v) for v in (r.get(cid) for r in rows) if v is not None]
        means[cid] = sum(present) / len(present) if present else None
    return ComponentMeanVector(repo_slug, means)


@dataclass(frozen=True)
class PairwiseComparison:
    repo_a: str
    repo_b: str
    cliffs_delta: float
    p_raw: float | None
    p_adjusted: float | None
    stars: str
    n_components: int


@dataclass(frozen=True)
class _PairStat:
    a: str
    b: str
    delta: float
    p_raw: float | None
    n: int


def _compare_pair(va: ComponentMeanVector, vb: ComponentMeanVector) -> _PairStat:
    a_vals: list[float] = []
    b_vals: list[float] = []
    for x, y in zip(va.values(), vb.values(), strict=True):
        if x is None or y is None:
            continue
        a_vals.append(x)
        b_vals.append(y)
    n = len(a_vals)
    if n < MIN_SHARED_COMPONENTS:
        raise InsufficientDataError(
            f"{va.repo_slug} vs {vb.repo_slug}: only {n} shared components "
            f"(need {MIN_SHARED_COMPONENTS})"
        )
    try:
        p: float | None = wilcoxon_signed_rank(a_vals, b_vals).pvalue
        delta = cliffs_delta(a_vals, b_vals)
    except AllZeroDifferencesError:
        logger.info("identical component means: %s vs %s", va.repo_slug, vb.repo_slug)
        p = None
        delta = 0.0
    return _PairStat(va.repo_slug, vb.repo_slug, delta, p, n)


def compare_projects(vectors: Sequence[ComponentMeanVector]) -> list[PairwiseComparison]:
    """Every ordered project pair; p-values Holm-adjusted over unordered pairs.

    Output order: `vectors` order for repo_a, then for repo_b.
    """

    if len(vectors) < 2:
        raise InsufficientDataError("compare needs at least 2 projects")
    slugs = [v.repo_slug for v in vectors]
    if len(set(slugs)) != len(slugs):
        raise ValueError("duplicate project in comparison")

    pairs = [_compare_pair(va, vb) for va, vb in itertools.combinations(vectors, 2)]
    raw = {i: s.p_raw for i, s in enumerate(pairs) if s.p_raw is not None}
    adjusted: dict[int, float] = {}
    if raw:
        adjusted = dict(zip(raw, holm_bonferroni(list(raw.values())), strict=True))

    by_pair: dict[tuple[str, str], PairwiseComparison] = {}
    for i, s in enumerate(pairs):
        p_adj = adjusted.get(i)
        stars = stars_for(p_adj)
        by_pair[(s.a, s.b)] = PairwiseComparison(s.a, s.b, s.delta, s.p_raw, p_adj, stars, s.n)
        by_pair[(s.b, s.a)] = PairwiseComparison(
            s.b, s.a, -s.delta if s.delta else 0.0, s.p_raw, p_adj, stars, s.n
        )
    return [by_pair[(a, b)] for a in slugs for b in slugs if a != b]
