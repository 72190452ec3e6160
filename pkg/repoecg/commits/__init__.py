"""Commit history mining and delta-maintainability scoring."""

from .dmm import DmmScores, RiskThresholds, dmm_scores
from .mine import CommitRecord, author_identity, load_commits, mine_commits, write_commits
from .units import ChangedUnit, extract_units

__all__ = [
    "ChangedUnit",
    "CommitRecord",
    "DmmScores",
    "RiskThresholds",
    "author_identity",
    "dmm_scores",
    "extract_units",
    "load_commits",
    "mine_commits",
    "write_commits",
]
