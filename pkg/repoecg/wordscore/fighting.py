"""Log-odds ratio with an informative Dirichlet prior ("fighting words").

For token w with class counts y1, y2, class totals n1, n2, a symmetric
per-token prior alpha and alpha0 = alpha * |vocabulary|:

    delta = ln((y1+a) / (n1+a0-y1-a)) - ln((y2+a) / (n2+a0-y2-a))
    var   = 1/(y1+a) + 1/(y2+a)
    z     = delta / sqrt(var)

Positive z leans towards the useful class.
"""

from __future__ import annotations

import logging
import math
from collections import Counter
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from typing import Literal

from ..errors import SingleClassCorpusError
from ..githost.records import CommentKey, CommentRecord
from .clean import tokenize

logger = logging.getLogger(__name__)

UtteranceClass = Literal["useful", "not_useful"]


@dataclass(frozen=True)
class LabeledUtterance:
    key: CommentKey
    repo_slug: str
    text: str
    label: UtteranceClass

    def __post_init__(self) -> None:
        if not self.text.strip():
            raise ValueError(f"empty utterance: {self.key}")


@dataclass(frozen=True)
class TokenZScore:
    token: str
    count_useful: int
    count_not_useful: int
    log_odds: float
    z: float
    # "useful" / "not_useful" for the annotated top-N of each class.
    top_class: str = ""

    @property
    def total(self) -> int:
        return self.count_useful + self.count_not_useful


def ngrams(tokens: Sequence[str], ngram_max: int) -> list[str]:
    out: list[str] = []
    for n in range(1, ngram_max + 1):
        out.extend(" ".join(tokens[i : i + n]) for i in range(len(tokens) - n + 1))
    return out


def labeled_utterances(
    comments: Iterable[CommentRecord],
    useful_by_key: Mapping[CommentKey, bool],
) -> tuple[list[LabeledUtterance], int]:
    """Comments with a usefulness decision, cleaned; empty ones are dropped.

    Returns:
      (utterances ordered by comment key, dropped count)
    """

    out: list[LabeledUtterance] = []
    dropped = 0
    for c in sorted(comments, key=lambda x: x.key):
        useful = useful_by_key.get(c.key)
        if useful is None:
            continue
        text = " ".join(tokenize(c.body))
        if not text:
            dropped += 1
            continue
        out.append(
            LabeledUtterance(c.key, c.repo_slug, text, "useful" if useful else "not_useful")
        )
    return out, dropped


def _count(utterances: Iterable[LabeledUtterance], ngram_max: int) -> Counter[str]:
    counts: Counter[str] = Counter()
    for u in utterances:
        counts.update(ngrams(u.text.split(), ngram_max))
    return counts


def fighting_words(
    useful: Sequence[LabeledUtterance],
    not_useful: Sequence[LabeledUtterance],
    *,
    alpha: float = 0.1,
    ngram_max: int = 2,
    min_count: int = 5,
    top_n: int = 10,
) -> list[TokenZScore]:
    """Ranked by z descending; ties broken by token."""

    if not useful or not not_useful:
        present = "useful" if useful else "not_useful" if not_useful else "no"
        raise SingleClassCorpusError(
            f"fighting words needs utterances from both classes (only {present} utterances)"
        )
    if alpha <= 0 or ngram_max < 1 or min_count < 1 or top_n < 0:
        raise ValueError("alpha must be > 0; ngram_max and min_count must be >= 1")

    c1 = _count(useful, ngram_max)
    c2 = _count(not_useful, ngram_max)
    n1 = sum(c1.values())
    n2 = sum(c2.values())
    vocab = sorted(set(c1) | set(c2))
    a0 = alpha * len(vocab)

    scored: list[TokenZScore] = []
    for w in vocab:
        y1 = c1.get(w, 0)
        y2 = c2.get(w, 0)
        if y1 + y2 < min_count:
            continue
        if len(vocab) == 1:
            # Both classes consist of this one token: odds are undefined and equal.
            delta = 0.0
        else:
            l1 = math.log((y1 + alpha) / (n1 + a0 - y1 - alpha))
            l2 = math.log((y2 + alpha) / (n2 + a0 - y2 - alpha))
            delta = l1 - l2
        sigma = math.sqrt(1.0 / (y1 + alpha) + 1.0 / (y2 + alpha))
        scored.append(TokenZScore(w, y1, y2, delta, delta / sigma))

    scored.sort(key=lambda t: (-t.z, t.token))
    top_useful = {t.token for t in [s for s in scored if s.z > 0][:top_n]}
    top_not = {
        t.token for t in sorted((s for s in scored if s.z < 0), key=lambda s: (s.z, s.token))[:top_n]
    }
    out = [
        TokenZScore(
            t.token,
            t.count_useful,
            t.count_not_useful,
            t.log_odds,
            t.z,
            "useful" if t.token in top_useful else "not_useful" if t.token in top_not else "",
        )
        for t in scored
    ]
    logger.debug("fighting words: %d tokens scored (vocabulary %d)", len(out), len(vocab))
    return out
