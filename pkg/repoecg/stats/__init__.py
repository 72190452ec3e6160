"""Nonparametric cross-project comparison."""

from .compare import (
    COMPARISON_COMPONENTS,
    ComponentMeanVector,
    PairwiseComparison,
    compare_projects,
    component_means,
)
from .nonparam import cliffs_delta, holm_bonferroni, stars_for, wilcoxon_signed_rank
from .report import format_comparison_table, write_comparison_csv

__all__ = [
    "COMPARISON_COMPONENTS",
    "ComponentMeanVector",
    "PairwiseComparison",
    "cliffs_delta",
    "compare_projects",
    "component_means",
    "format_comparison_table",
    "holm_bonferroni",
    "stars_for",
    "wilcoxon_signed_rank",
    "write_comparison_csv",
]
