"""Word-level contrast between useful and not-useful comments."""

from .clean import clean_text, tokenize
from .fighting import (
    LabeledUtterance,
    TokenZScore,
    fighting_words,
    labeled_utterances,
    ngrams,
)
from .plot import render_scatter_svg, write_fighting_words_csv

__all__ = [
    "LabeledUtterance",
    "TokenZScore",
    "clean_text",
    "fighting_words",
    "labeled_utterances",
    "ngrams",
    "render_scatter_svg",
    "tokenize",
    "write_fighting_words_csv",
]
