"""Markdown cleanup applied before any text scoring."""

from __future__ import annotations

import re

_FENCE_RE = re.compile(r"(?ms)^[ \t]*(`{3,}|~{3,})[^\n]*\n.*?^[ \t]*\1[ \t]*$")
# An unterminated fence swallows the rest of the body.
_OPEN_FENCE_RE = re.compile(r"(?ms)^[ \t]*(`{3,}|~{3,}).*\Z")
_URL_RE = re.compile(r"(?:https?|ftp)://[^\s)>\]]+|www\.[^\s)>\]]+", re.IGNORECASE)
_MD_LINK_RE = re.compile(r"!?\[([^\]]*)\]\(\s*\)")
_HTML_COMMENT_RE = re.compile(r"(?s)<!--.*?-->")
_WS_RE = re.compile(r"[ \t]+")


def strip_markup(body: str) -> str:
    text = (body or "").replace("\r\n", "\n")
    text = _HTML_COMMENT_RE.sub(" ", text)
    text = _FENCE_RE.sub(" ", text)
    text = _OPEN_FENCE_RE.sub(" ", text)
    text = _URL_RE.sub(" ", text)
    # `[label](url)` with the url already gone keeps its label.
    text = _MD_LINK_RE.sub(r"\1", text)
    lines = [_WS_RE.sub(" ", line).strip() for line in text.split("\n")]
    return "\n".join(line for line in lines if line)
