"""Delta-maintainability scores: share of churn landing in low-risk units."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from .units import ChangedUnit


@dataclass(frozen=True)
class RiskThresholds:
    """Inclusive upper bounds of the low-risk profile per property."""

    unit_size: int = 15
    unit_complexity: int = 5
    unit_interfacing: int = 2


@dataclass(frozen=True)
class DmmScores:
    size: float | None = None
    complexity: float | None = None
    interfacing: float | None = None


def dmm_scores(
    units: Sequence[ChangedUnit], thresholds: RiskThresholds | None = None
) -> DmmScores:
    """score = low-risk churn / total churn, per property; absent without units."""

    t = thresholds or RiskThresholds()
    changed = [u for u in units if u.churn > 0]
    total = sum(u.churn for u in changed)
    if total == 0:
        return DmmScores()

    size_low = sum(u.churn for u in changed if u.size_loc <= t.unit_size)
    complexity_low = sum(u.churn for u in changed if u.cyclomatic <= t.unit_complexity)
    interfacing_low = sum(
        u.churn for u in changed if u.param_count <= t.unit_interfacing
    )
    return DmmScores(
        size=size_low / total,
        complexity=complexity_low / total,
        interfacing=interfacing_low / total,
    )
