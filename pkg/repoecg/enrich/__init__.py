"""Secondary metrics: text scores, readability, diversity and people."""

from .diversity import DiversityInput, shannon_index
from .monthly import EnrichContext, enrich_monthly
from .people import affiliation_of, gender_ratio, location_coverage
from .readability import readability
from .scorers import (
    ExternalScorer,
    LexiconScorer,
    TextScore,
    TextScorer,
    score_comments,
    score_text,
)
from .tables import load_country_table, load_gender_table
from .text import strip_markup

__all__ = [
    "DiversityInput",
    "EnrichContext",
    "ExternalScorer",
    "LexiconScorer",
    "TextScore",
    "TextScorer",
    "affiliation_of",
    "enrich_monthly",
    "gender_ratio",
    "load_country_table",
    "load_gender_table",
    "location_coverage",
    "readability",
    "score_comments",
    "score_text",
    "shannon_index",
    "strip_markup",
]
