"""Deterministic comment cleaner for the word-level analysis."""

from __future__ import annotations

import re

from ..enrich.text import strip_markup

_INLINE_CODE_RE = re.compile(r"`[^`\n]*`")
_MENTION_RE = re.compile(r"(?<![\w@])@[A-Za-z0-9](?:[A-Za-z0-9-]*[A-Za-z0-9])?(?:/[\w.-]+)?")
_WORD_RE = re.compile(r"[^\W_]+(?:'[^\W_]+)*")


def tokenize(raw: str) -> list[str]:
    text = strip_markup(raw)
    text = _INLINE_CODE_RE.sub(" ", text)
    text = _MENTION_RE.sub(" ", text)
    return _WORD_RE.findall(text.lower())


def clean_text(raw: str) -> str:
    """'see `foo()` at https://x.y' -> 'see at'."""

    return " ".join(tokenize(raw))
