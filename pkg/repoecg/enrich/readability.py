"""Flesch Reading Ease of markup-stripped text."""

from __future__ import annotations

import re

import textstat

from .text import strip_markup

_WORD_RE = re.compile(r"[^\W_]", re.UNICODE)


def readability(body: str) -> float | None:
    text = strip_markup(body)
    if not _WORD_RE.search(text):
        return None
    return float(textstat.flesch_reading_ease(text))
