"""Shannon diversity over categorical participant attributes."""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Mapping
from dataclasses import dataclass

import numpy as np
from scipy.stats import entropy


@dataclass(frozen=True)
class DiversityInput:
    category_counts: Mapping[str, int]

    def __post_init__(self) -> None:
        if not self.category_counts:
            raise ValueError("diversity input needs at least one category")
        bad = sorted(k for k, v in self.category_counts.items() if v <= 0)
        if bad:
            raise ValueError(f"category counts must be positive: {', '.join(bad)}")


def shannon_index(data: DiversityInput) -> float:
    """H' = -sum(p_i * ln p_i), natural log."""

    counts = np.array(
        [data.category_counts[k] for k in sorted(data.category_counts)], dtype=float
    )
    if counts.size == 1:
        return 0.0
    return float(entropy(counts))


def shannon_or_none(items: Iterable[str]) -> float | None:
    """Index of the given category observations; absent for no observations."""

    counts = Counter(items)
    if not counts:
        return None
    return shannon_index(DiversityInput(dict(counts)))
